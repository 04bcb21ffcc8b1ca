#pragma once

#include <vector>

#include "thz/channel.hpp"

namespace thz {

// Angular grid with directional cosines uniformly spaced on [-1, 1).
struct AngularGrid {
  int size = 0;
  std::vector<double> cosines;  // 2(i-1)/G - 1
  std::vector<double> angles;   // acos(cosine), strictly increasing in cosine
};

AngularGrid make_grid(int G);

// N x G dictionary; column i = array_response(geom, angles[i]).
CMat build_dictionary(const AngularGrid& grid, const ArrayGeometry& geom);

// Frame-based sounding design: DFT RF stages, identity-factor pilot/combiner blocks.
struct SoundingDesign {
  CMat F_RF;  // N_T x N_T, unitary, constant modulus 1/sqrt(N_T)
  CMat W_RF;  // N_R x N_R, unitary, constant modulus 1/sqrt(N_R)
  CMat X_p;   // N_T x M_T, block diagonal (N_F blocks of N_RF x M_T/N_F)
  CMat W_BB;  // N_R x M_R, block diagonal (N_C blocks of N_RF x M_R/N_C)
  int n_tx = 0, n_rx = 0, n_rf = 0;
  int m_tx = 0, m_rx = 0;
  int n_frames = 0;  // N_F = N_T / N_RF
  int n_comb = 0;    // N_C = N_R / N_RF
};

SoundingDesign design_sounding(int n_tx, int n_rx, int n_rf, int m_tx, int m_rx);

// Normalized DFT matrix, unitary with |entries| = 1/sqrt(N).
CMat dft_matrix(int n);

struct CoherenceResult {
  double total = 0.0;  // sum_{i != j} |m_i^H m_j|^2
  double bound = 0.0;  // ||M M^H||_F^2 >= total
};

CoherenceResult total_coherence(const CMat& m);

struct SensingOperator {
  CMat Phi;        // M_T M_R x N_T N_R, antenna-domain sensing matrix
  CMat Phi_tilde;  // M_T M_R x G_R G_T, equivalent sensing matrix
  CMat Psi;        // N_R N_T x G_R G_T, sparsifying dictionary
  CMat R_v;        // M_T M_R x M_T M_R, Hermitian PSD noise covariance
  double sigma_v2 = 0.0;
};

SensingOperator sensing_operator(const SoundingDesign& design, const CMat& a_tx,
                                 const CMat& a_rx, double sigma_v2);

// One sounding pass: y = vec(W_BB^H W_RF^H (H F_RF X_p + V)), V white CN(0, sigma_v2).
CVec simulate_sounding(const CMat& H, const SoundingDesign& design, double sigma_v2,
                       Rng& rng);

// M independent noise realizations over the same channel, stacked as columns.
CMat simulate_sounding_batch(const CMat& H, const SoundingDesign& design,
                             double sigma_v2, int m_blocks, Rng& rng);

// H_hat = A_R unvec(h_b) A_T^H with column-major unvec of a G_R x G_T matrix.
CMat beamspace_to_channel(const CVec& h_b, const CMat& a_rx, const CMat& a_tx);

}  // namespace thz
