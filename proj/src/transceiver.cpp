#include "thz/transceiver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "thz/errors.hpp"

namespace thz {

WaterFillingResult fully_digital_precoder(const CMat& h, int n_streams, double p_total,
                                          double sigma_v2) {
  if (n_streams < 1) throw ConfigError("water-filling: N_S must be >= 1");
  Eigen::BDCSVD<CMat> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double rank_cut = 1e-12 * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_cut) ++rank;
  if (n_streams > rank)
    throw ConfigError("water-filling: N_S exceeds rank of the channel");

  RVec inv_gain(n_streams);  // sigma_v^2 / Sigma(i,i)^2
  for (int i = 0; i < n_streams; ++i) inv_gain(i) = sigma_v2 / (s(i) * s(i));

  const double budget = p_total * n_streams;
  auto allocated = [&](double lambda) {
    double sum = 0.0;
    for (int i = 0; i < n_streams; ++i) sum += std::max(0.0, lambda - inv_gain(i));
    return sum;
  };

  double lo = 0.0;
  double hi = inv_gain(n_streams - 1) + budget;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (allocated(mid) < budget ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);

  WaterFillingResult res;
  res.lambda = lambda;
  res.p = RVec(n_streams);
  for (int i = 0; i < n_streams; ++i) res.p(i) = std::max(0.0, lambda - inv_gain(i));
  res.f_opt = svd.matrixV().leftCols(n_streams) *
              res.p.cwiseSqrt().cast<std::complex<double>>().asDiagonal();
  return res;
}

MmseCombinerResult mmse_combiner(const CMat& h, const CMat& f, double sigma_v2,
                                 int n_streams) {
  if (!(sigma_v2 >= 0.0)) throw ConfigError("mmse_combiner: sigma_v^2 must be >= 0");
  const CMat hf = h * f;  // N_R x N_S
  MmseCombinerResult res;
  CMat inner = hf.adjoint() * hf;
  inner.diagonal().array() += n_streams * sigma_v2;
  res.w_m = hf * inner.ldlt().solve(CMat::Identity(f.cols(), f.cols()));
  res.r_yy = (hf * hf.adjoint() +
              n_streams * sigma_v2 * CMat::Identity(h.rows(), h.rows())) /
             static_cast<double>(n_streams);
  return res;
}

HybridStages hybrid_from_beamspace(const CVec& h_b_hat, const CMat& a_tx,
                                   const CMat& a_rx, int n_rf, const CMat& f_opt,
                                   const CMat& r_yy, const CMat& w_m, double p_total,
                                   int n_streams) {
  const Eigen::Index g_rx = a_rx.cols();
  const Eigen::Index g_tx = a_tx.cols();
  if (h_b_hat.size() != g_rx * g_tx)
    throw ConfigError("hybrid design: beamspace length must equal G_R * G_T");
  if (n_rf < n_streams)
    throw ConfigError("hybrid design: need N_RF >= N_S");

  // sort linear beamspace indices by magnitude, descending; index ascending on ties
  std::vector<Eigen::Index> order(h_b_hat.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(h_b_hat(a)) > std::abs(h_b_hat(b));
  });

  std::vector<Eigen::Index> tx_cols, rx_rows;
  for (Eigen::Index s : order) {
    const Eigen::Index j = s / g_rx;  // AoD column in the G_R x G_T beamspace matrix
    const Eigen::Index k = s % g_rx;  // AoA row
    if (static_cast<int>(tx_cols.size()) < n_rf &&
        std::find(tx_cols.begin(), tx_cols.end(), j) == tx_cols.end())
      tx_cols.push_back(j);
    if (static_cast<int>(rx_rows.size()) < n_rf &&
        std::find(rx_rows.begin(), rx_rows.end(), k) == rx_rows.end())
      rx_rows.push_back(k);
    if (static_cast<int>(tx_cols.size()) == n_rf &&
        static_cast<int>(rx_rows.size()) == n_rf)
      break;
  }
  if (static_cast<int>(tx_cols.size()) < n_rf || static_cast<int>(rx_rows.size()) < n_rf)
    throw ConfigError(
        "hybrid design: grid exhausted before gathering N_RF distinct columns; "
        "use a larger grid or fewer streams");

  HybridStages st;
  st.f_rf = CMat(a_tx.rows(), n_rf);
  st.w_rf = CMat(a_rx.rows(), n_rf);
  for (int i = 0; i < n_rf; ++i) {
    st.f_rf.col(i) = a_tx.col(tx_cols[i]);
    st.w_rf.col(i) = a_rx.col(rx_rows[i]);
  }

  Eigen::ColPivHouseholderQR<CMat> qr(st.f_rf);
  if (qr.rank() < n_streams)
    throw NumericalError("hybrid design: F_RF rank below N_S after deduplication");
  st.f_bb = pinv(st.f_rf) * f_opt;

  // power re-projection onto the Frobenius budget
  const double norm = (st.f_rf * st.f_bb).norm();
  if (norm > 0.0) st.f_bb *= std::sqrt(p_total * n_streams) / norm;

  const CMat wr = st.w_rf.adjoint() * r_yy;
  st.w_bb = (wr * st.w_rf).ldlt().solve(wr * w_m);
  return st;
}

double ase(const CMat& h, const CMat& f, const CMat& w, double sigma_v2, int n_streams) {
  const CMat h_eq = w.adjoint() * h * f;          // N_S x N_S
  const CMat r_n = sigma_v2 * (w.adjoint() * w);  // combined-noise covariance
  Eigen::LLT<CMat> llt(r_n);
  if (llt.info() != Eigen::Success)
    throw NumericalError("ase: singular combined-noise covariance");
  // log2 det(I + (1/N_S) L^-1 Heq Heq^H L^-H), Hermitian PD log-det
  const CMat b = llt.matrixL().solve(h_eq);
  CMat m = b * b.adjoint() / static_cast<double>(n_streams);
  m.diagonal().array() += 1.0;
  Eigen::LLT<CMat> mllt(m);
  if (mllt.info() != Eigen::Success) throw NumericalError("ase: log-det failure");
  double ld = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    ld += std::log2(std::real(mllt.matrixLLT()(i, i)));
  return 2.0 * ld;
}

double ber_qpsk(const CMat& h, const CMat& f, const CMat& w, double sigma_v2,
                int n_symbols, Rng& rng) {
  if (n_symbols < 1) throw ConfigError("ber_qpsk: n_symbols must be >= 1");
  const int n_s = static_cast<int>(f.cols());
  const int n_r = static_cast<int>(h.rows());
  const double amp = 1.0 / std::sqrt(2.0 * n_s);  // E{x x^H} = I / N_S

  std::bernoulli_distribution bit(0.5);
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma_v2 / 2.0));

  // Gray-coded QPSK: bit0 -> sign of Re, bit1 -> sign of Im
  CMat x(n_s, n_symbols);
  std::vector<std::uint8_t> tx_bits(static_cast<std::size_t>(2 * n_s) * n_symbols);
  std::size_t bi = 0;
  for (int t = 0; t < n_symbols; ++t)
    for (int s = 0; s < n_s; ++s) {
      const bool b0 = bit(rng);
      const bool b1 = bit(rng);
      tx_bits[bi++] = b0;
      tx_bits[bi++] = b1;
      x(s, t) = {amp * (b0 ? -1.0 : 1.0), amp * (b1 ? -1.0 : 1.0)};
    }

  CMat v = CMat::Zero(n_r, n_symbols);
  if (sigma_v2 > 0.0)
    for (int t = 0; t < n_symbols; ++t)
      for (int r = 0; r < n_r; ++r) v(r, t) = {noise(rng), noise(rng)};

  const CMat y = w.adjoint() * (h * f * x + v);

  std::size_t errors = 0;
  bi = 0;
  for (int t = 0; t < n_symbols; ++t)
    for (int s = 0; s < n_s; ++s) {
      const bool b0 = std::real(y(s, t)) < 0.0;
      const bool b1 = std::imag(y(s, t)) < 0.0;
      errors += (b0 != static_cast<bool>(tx_bits[bi++]));
      errors += (b1 != static_cast<bool>(tx_bits[bi++]));
    }
  return static_cast<double>(errors) / static_cast<double>(2 * n_s * n_symbols);
}

}  // namespace thz
