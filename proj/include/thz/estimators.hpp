#pragma once

#include <functional>
#include <vector>

#include "thz/beamspace.hpp"

namespace thz {

using RVec = Eigen::VectorXd;

// Minimum-norm pseudo-inverse solve with relative singular-value cutoff.
CVec pinv_solve(const CMat& a, const CVec& b, double rel_cutoff = 1e-10);
CMat pinv(const CMat& a, double rel_cutoff = 1e-10);

struct OmpConfig {
  double epsilon_t = 1e-6;  // residual-energy-change stopping threshold
  int max_iters = 100;
  // Correlation normalized by column norm (standard practice); false keeps the
  // literal unnormalized selection rule.
  bool normalize_correlation = true;
};

struct OmpResult {
  CVec h_b;
  std::vector<int> support;
  std::vector<double> residual_energies;  // ||r_0||^2, ||r_1||^2, ...
  bool truncated = false;                 // max_iters reached
};

struct BlConfig {
  double epsilon = 1e-6;      // threshold on ||Gamma^(j) - Gamma^(j-1)||_F
  int k_max = 50;
  double gamma_floor = 1e-12;
  bool track_evidence = true;
  // Invoked after each E-step with the Gamma it was computed from.
  std::function<void(int iter, const RVec& gamma_prev, const CMat& mu, const CMat& r_b)>
      observer;
};

struct HyperparameterState {
  RVec gamma;                    // diagonal of Gamma_hat
  CMat mu;                       // posterior mean, one column per measurement vector
  CMat R_b;                      // posterior covariance
  int iterations = 0;
  std::vector<double> evidence;  // log f(y; Gamma) up to an additive constant,
                                 // one entry per EM iteration
};

struct BlResult {
  CVec h_b;  // final posterior mean
  HyperparameterState state;
};

struct MblResult {
  CMat h_b;  // G_R G_T x M posterior means
  HyperparameterState state;
};

struct CrlbResult {
  CMat j_b;                        // Bayesian Fisher information matrix
  double mse_bound_beamspace = 0;  // Tr{J_B^-1}
  double mse_bound_channel = 0;    // Tr{Psi J_B^-1 Psi^H}
};

// h_hat = Phi^dagger y (antenna-domain LS baseline).
CVec estimate_ls(const CVec& y, const CMat& phi);

// Linear MMSE estimate (R_h^-1 + Phi^H R_v^-1 Phi)^-1 Phi^H R_v^-1 y.
CVec estimate_mmse(const CVec& y, const CMat& phi, const CMat& r_h, const CMat& r_v);

OmpResult estimate_omp(const CVec& y, const CMat& phi_tilde, const OmpConfig& cfg);

BlResult estimate_bl(const CVec& y, const CMat& phi_tilde, const CMat& r_v,
                     const BlConfig& cfg);

// MMV extension; reduces exactly to estimate_bl for a single column.
MblResult estimate_mbl(const CMat& y_batch, const CMat& phi_tilde, const CMat& r_v,
                       const BlConfig& cfg);

CrlbResult bcrlb(const CMat& phi_tilde, const CMat& r_v, const RVec& gamma_oracle,
                 const CMat& psi);

// ||H_hat - H||_F^2 / ||H||_F^2.
double nmse(const CMat& h_hat, const CMat& h);

}  // namespace thz
