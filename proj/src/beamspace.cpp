#include "thz/beamspace.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "thz/errors.hpp"

namespace thz {

AngularGrid make_grid(int G) {
  if (G < 1) throw ConfigError("make_grid: G must be >= 1");
  AngularGrid grid;
  grid.size = G;
  grid.cosines.reserve(G);
  grid.angles.reserve(G);
  for (int i = 0; i < G; ++i) {
    const double c = 2.0 * i / G - 1.0;
    grid.cosines.push_back(c);
    grid.angles.push_back(std::acos(c));
  }
  return grid;
}

CMat build_dictionary(const AngularGrid& grid, const ArrayGeometry& geom) {
  geom.validate();
  CMat a(geom.n_elements, grid.size);
  for (int i = 0; i < grid.size; ++i) a.col(i) = array_response(geom, grid.angles[i]);
  return a;
}

CMat dft_matrix(int n) {
  CMat f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double arg = -2.0 * std::numbers::pi * r * c / n;
      f(r, c) = norm * std::complex<double>(std::cos(arg), std::sin(arg));
    }
  return f;
}

SoundingDesign design_sounding(int n_tx, int n_rx, int n_rf, int m_tx, int m_rx) {
  if (n_rf < 1 || n_tx % n_rf != 0 || n_rx % n_rf != 0)
    throw ConfigError("design_sounding: N_RF must divide N_T and N_R");
  if (m_tx > n_tx || m_rx > n_rx)
    throw ConfigError("design_sounding: require M_T <= N_T and M_R <= N_R");
  const int n_frames = n_tx / n_rf;
  const int n_comb = n_rx / n_rf;
  if (m_tx % n_frames != 0) throw ConfigError("design_sounding: N_F must divide M_T");
  if (m_rx % n_comb != 0) throw ConfigError("design_sounding: N_C must divide M_R");

  SoundingDesign d;
  d.n_tx = n_tx;
  d.n_rx = n_rx;
  d.n_rf = n_rf;
  d.m_tx = m_tx;
  d.m_rx = m_rx;
  d.n_frames = n_frames;
  d.n_comb = n_comb;
  d.F_RF = dft_matrix(n_tx);
  d.W_RF = dft_matrix(n_rx);

  // Coherence-optimal blocks U [I; 0] with the DFT choice of the free unitary
  // factor U: all singular values equal 1, hence W_BB^H W_BB = I and
  // R_v = sigma_v^2 I. Any unitary U attains the coherence minimum; a DFT
  // factor excites every RF chain in every frame, so no array direction is
  // left unsounded when M_T < N_T (the identity choice skips one RF-chain row
  // per frame and leaves angular blind spots).
  const CMat u = dft_matrix(n_rf);
  const int bt = m_tx / n_frames;
  d.X_p = CMat::Zero(n_tx, m_tx);
  for (int i = 0; i < n_frames; ++i)
    d.X_p.block(i * n_rf, i * bt, n_rf, bt) = u.leftCols(bt);

  const int br = m_rx / n_comb;
  d.W_BB = CMat::Zero(n_rx, m_rx);
  for (int j = 0; j < n_comb; ++j)
    d.W_BB.block(j * n_rf, j * br, n_rf, br) = u.leftCols(br);
  return d;
}

CoherenceResult total_coherence(const CMat& m) {
  if (m.cols() < 2) throw ConfigError("total_coherence: need at least 2 columns");
  const CMat gram = m.adjoint() * m;
  const double full = gram.squaredNorm();  // == ||M M^H||_F^2
  double diag = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) diag += std::norm(gram(i, i));
  return CoherenceResult{full - diag, full};
}

SensingOperator sensing_operator(const SoundingDesign& design, const CMat& a_tx,
                                 const CMat& a_rx, double sigma_v2) {
  if (a_tx.rows() != design.n_tx || a_rx.rows() != design.n_rx)
    throw ConfigError("sensing_operator: dictionary rows must match array sizes");

  const CMat tx_part = design.X_p.transpose() * design.F_RF.transpose();   // M_T x N_T
  const CMat rx_part = design.W_BB.adjoint() * design.W_RF.adjoint();      // M_R x N_R

  SensingOperator op;
  op.sigma_v2 = sigma_v2;
  op.Phi = Eigen::kroneckerProduct(tx_part, rx_part);
  op.Phi_tilde = Eigen::kroneckerProduct((tx_part * a_tx.conjugate()).eval(),
                                         (rx_part * a_rx).eval());
  op.Psi = Eigen::kroneckerProduct(a_tx.conjugate().eval(), a_rx);
  CMat w = design.W_BB.adjoint() * design.W_RF.adjoint() * design.W_RF * design.W_BB;
  // whitening designs (unitary W_RF, orthonormal W_BB blocks) give w = I
  // analytically; snap the floating-point residue so R_v is exactly sigma^2 I
  const double id_residue =
      (w - CMat::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
  if (id_residue <= 64.0 * std::numeric_limits<double>::epsilon() * design.n_rx)
    w = CMat::Identity(w.rows(), w.cols());
  op.R_v = sigma_v2 *
           Eigen::kroneckerProduct(CMat::Identity(design.m_tx, design.m_tx), w);
  return op;
}

namespace {
CMat white_noise(int rows, int cols, double sigma_v2, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma_v2 / 2.0));
  CMat v(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(r, c) = {re, im};
    }
  return v;
}
}  // namespace

CVec simulate_sounding(const CMat& H, const SoundingDesign& design, double sigma_v2,
                       Rng& rng) {
  if (H.rows() != design.n_rx || H.cols() != design.n_tx)
    throw ConfigError("simulate_sounding: channel dimensions mismatch");
  CMat y_tilde = H * design.F_RF * design.X_p;  // N_R x M_T
  if (sigma_v2 > 0.0) y_tilde += white_noise(design.n_rx, design.m_tx, sigma_v2, rng);
  const CMat y = design.W_BB.adjoint() * design.W_RF.adjoint() * y_tilde;  // M_R x M_T
  return CVec(Eigen::Map<const CVec>(y.data(), y.size()));
}

CMat simulate_sounding_batch(const CMat& H, const SoundingDesign& design,
                             double sigma_v2, int m_blocks, Rng& rng) {
  if (m_blocks < 1) throw ConfigError("simulate_sounding_batch: M must be >= 1");
  CMat out(design.m_tx * design.m_rx, m_blocks);
  for (int m = 0; m < m_blocks; ++m)
    out.col(m) = simulate_sounding(H, design, sigma_v2, rng);
  return out;
}

CMat beamspace_to_channel(const CVec& h_b, const CMat& a_rx, const CMat& a_tx) {
  const Eigen::Index g_rx = a_rx.cols();
  const Eigen::Index g_tx = a_tx.cols();
  if (h_b.size() != g_rx * g_tx)
    throw ConfigError("beamspace_to_channel: length must equal G_R * G_T");
  const Eigen::Map<const CMat> hb_mat(h_b.data(), g_rx, g_tx);
  return a_rx * hb_mat * a_tx.adjoint();
}

}  // namespace thz
