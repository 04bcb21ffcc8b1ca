#pragma once

#include "thz/estimators.hpp"

namespace thz {

struct WaterFillingResult {
  CMat f_opt;     // N_T x N_S fully-digital precoder V_1 P^{1/2}
  RVec p;         // per-stream power allocation
  double lambda = 0.0;  // water level
};

// SVD water-filling; lambda located by bisection so that sum(p) = P_T N_S.
WaterFillingResult fully_digital_precoder(const CMat& h, int n_streams, double p_total,
                                          double sigma_v2);

struct MmseCombinerResult {
  CMat w_m;   // N_R x N_S fully-digital MMSE combiner
  CMat r_yy;  // N_R x N_R received covariance
};

// f is the combined precoder (fully-digital or F_RF F_BB).
MmseCombinerResult mmse_combiner(const CMat& h, const CMat& f, double sigma_v2,
                                 int n_streams);

struct HybridStages {
  CMat f_rf;  // N_T x N_RF, columns are array responses (constant modulus)
  CMat f_bb;  // N_RF x N_S
  CMat w_rf;  // N_R x N_RF
  CMat w_bb;  // N_RF x N_S
};

// Analog stages from the N_RF dominant beamspace entries (deduplicated per
// side), baseband stages from LS / weighted-LS fits, followed by a scalar
// power re-projection so that ||F_RF F_BB||_F^2 = P_T N_S.
HybridStages hybrid_from_beamspace(const CVec& h_b_hat, const CMat& a_tx,
                                   const CMat& a_rx, int n_rf, const CMat& f_opt,
                                   const CMat& r_yy, const CMat& w_m, double p_total,
                                   int n_streams);

// Shannon log-det spectral efficiency with combined precoder f and combiner w.
double ase(const CMat& h, const CMat& f, const CMat& w, double sigma_v2, int n_streams);

// Gray-coded QPSK Monte Carlo over the designed link; returns bit-error fraction.
double ber_qpsk(const CMat& h, const CMat& f, const CMat& w, double sigma_v2,
                int n_symbols, Rng& rng);

}  // namespace thz
