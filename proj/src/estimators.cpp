#include "thz/estimators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "thz/errors.hpp"

namespace thz {

namespace {

Eigen::LLT<CMat> llt_or_throw(const CMat& m, const char* what) {
  Eigen::LLT<CMat> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": matrix not positive definite");
  return llt;
}

double logdet_from_llt(const Eigen::LLT<CMat>& llt) {
  double ld = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) ld += std::log(std::real(l(i, i)));
  return 2.0 * ld;
}

}  // namespace

CVec pinv_solve(const CMat& a, const CVec& b, double rel_cutoff) {
  Eigen::BDCSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rel_cutoff);
  return svd.solve(b);
}

CMat pinv(const CMat& a, double rel_cutoff) {
  Eigen::BDCSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_cutoff * (s.size() > 0 ? s(0) : 0.0);
  RVec inv = RVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CVec estimate_ls(const CVec& y, const CMat& phi) {
  return pinv_solve(phi, y);
}

CVec estimate_mmse(const CVec& y, const CMat& phi, const CMat& r_h, const CMat& r_v) {
  Eigen::LLT<CMat> rh_llt(r_h);
  if (rh_llt.info() != Eigen::Success)
    throw NumericalError("estimate_mmse: singular channel covariance R_h");
  auto rv_llt = llt_or_throw(r_v, "estimate_mmse R_v");
  const CMat rv_inv_phi = rv_llt.solve(phi);
  const CMat lhs = rh_llt.solve(CMat::Identity(phi.cols(), phi.cols())) +
                   phi.adjoint() * rv_inv_phi;
  return lhs.ldlt().solve(rv_inv_phi.adjoint() * y);
}

OmpResult estimate_omp(const CVec& y, const CMat& phi_tilde, const OmpConfig& cfg) {
  if (!(cfg.epsilon_t > 0.0)) throw ConfigError("OMP: epsilon_t must be > 0");
  if (cfg.max_iters < 1) throw ConfigError("OMP: max_iters must be >= 1");
  const Eigen::Index g = phi_tilde.cols();

  RVec col_norms(g);
  for (Eigen::Index k = 0; k < g; ++k) {
    col_norms(k) = phi_tilde.col(k).norm();
    if (col_norms(k) == 0.0) throw ConfigError("OMP: sensing matrix has a zero column");
  }

  OmpResult res;
  res.h_b = CVec::Zero(g);
  CVec r = y;
  double e_prev = 0.0;  // ||r_{-1}||^2
  double e = y.squaredNorm();
  res.residual_energies.push_back(e);

  std::vector<bool> picked(g, false);
  CVec coeffs;
  const Eigen::Index max_support = std::min<Eigen::Index>(phi_tilde.rows(), g);

  // Stop on a small residual-energy change; a residual already below the
  // threshold can only produce sub-threshold changes, so it stops too instead
  // of spending an iteration on a negligible atom.
  while (std::abs(e_prev - e) >= cfg.epsilon_t && e >= cfg.epsilon_t) {
    if (static_cast<int>(res.support.size()) >= cfg.max_iters ||
        static_cast<Eigen::Index>(res.support.size()) >= max_support) {
      res.truncated = true;
      break;
    }
    CVec corr = phi_tilde.adjoint() * r;
    Eigen::Index best = -1;
    double best_score = -1.0;
    for (Eigen::Index k = 0; k < g; ++k) {
      if (picked[k]) continue;
      double score = std::abs(corr(k));
      if (cfg.normalize_correlation) score /= col_norms(k);
      if (score > best_score) {
        best_score = score;
        best = k;
      }
    }
    picked[best] = true;
    res.support.push_back(static_cast<int>(best));

    CMat sub(phi_tilde.rows(), res.support.size());
    for (std::size_t i = 0; i < res.support.size(); ++i)
      sub.col(i) = phi_tilde.col(res.support[i]);
    coeffs = sub.colPivHouseholderQr().solve(y);
    r = y - sub * coeffs;

    e_prev = e;
    e = r.squaredNorm();
    if (e > e_prev * (1.0 + 1e-9) + 1e-12)
      throw NumericalError("OMP: residual energy increased at iteration " +
                           std::to_string(res.support.size()));
    res.residual_energies.push_back(e);
  }

  for (std::size_t i = 0; i < res.support.size(); ++i)
    res.h_b(res.support[i]) = coeffs(i);
  return res;
}

MblResult estimate_mbl(const CMat& y_batch, const CMat& phi_tilde, const CMat& r_v,
                       const BlConfig& cfg) {
  if (y_batch.cols() < 1) throw ConfigError("MBL: need at least one measurement vector");
  if (!(cfg.epsilon > 0.0) || cfg.k_max < 1 || !(cfg.gamma_floor > 0.0))
    throw ConfigError("BL: invalid stopping configuration");

  const Eigen::Index n = phi_tilde.rows();
  const Eigen::Index g = phi_tilde.cols();
  const Eigen::Index m = y_batch.cols();

  auto rv_llt = llt_or_throw(r_v, "BL R_v");
  const CMat rv_inv_phi = rv_llt.solve(phi_tilde);           // R_v^-1 Phi
  const CMat a = phi_tilde.adjoint() * rv_inv_phi;           // Phi^H R_v^-1 Phi
  const CMat b = rv_inv_phi.adjoint() * y_batch;             // Phi^H R_v^-1 Y
  const bool woodbury = n < g;                               // measurement-domain path

  auto evidence_at = [&](const RVec& gamma) {
    const CMat r_y = r_v + phi_tilde * gamma.asDiagonal() * phi_tilde.adjoint();
    auto llt = llt_or_throw(r_y, "BL evidence R_y");
    double quad = 0.0;
    const CMat sol = llt.solve(y_batch);
    for (Eigen::Index c = 0; c < m; ++c)
      quad += std::real(y_batch.col(c).dot(sol.col(c)));
    return -static_cast<double>(m) * logdet_from_llt(llt) - quad;
  };

  // The measurement-domain (Woodbury) E-step only needs diag(R_b) unless a
  // per-iteration observer asks for the full posterior covariance.
  const bool fast_diag = woodbury && !cfg.observer;

  auto full_posterior = [&](const RVec& gamma, int j, CMat& r_b, CMat& mu) {
    if (woodbury) {
      const CMat bg = phi_tilde * gamma.asDiagonal();  // Phi Gamma
      const CMat r_y = r_v + bg * phi_tilde.adjoint();
      Eigen::LLT<CMat> llt(r_y);
      if (llt.info() != Eigen::Success)
        throw NumericalError("BL: measurement covariance not PD at iteration " +
                             std::to_string(j));
      r_b = CMat(gamma.cast<std::complex<double>>().asDiagonal()) -
            bg.adjoint() * llt.solve(bg);
    } else {
      CMat lhs = a;
      lhs.diagonal() += gamma.cwiseInverse().cast<std::complex<double>>();
      Eigen::LDLT<CMat> ldlt(lhs);
      if (ldlt.info() != Eigen::Success)
        throw NumericalError("BL: posterior precision not PD at iteration " +
                             std::to_string(j));
      r_b = ldlt.solve(CMat::Identity(g, g));
    }
    r_b = 0.5 * (r_b + r_b.adjoint()).eval();  // suppress Hermitian drift
    mu = r_b * b;
  };

  RVec gamma = RVec::Ones(g);  // gamma_i^(0) = 1
  RVec gamma_estep = gamma;    // hyperparameters the returned posterior is based on
  RVec rb_diag(g);
  CMat r_b, mu;
  HyperparameterState state;

  for (int j = 1; j <= cfg.k_max; ++j) {
    // E-step
    gamma_estep = gamma;
    if (fast_diag) {
      const CMat bg = phi_tilde * gamma.asDiagonal();
      const CMat r_y = r_v + bg * phi_tilde.adjoint();
      Eigen::LLT<CMat> llt(r_y);
      if (llt.info() != Eigen::Success)
        throw NumericalError("BL: measurement covariance not PD at iteration " +
                             std::to_string(j));
      const CMat t = llt.matrixL().solve(bg);  // diag(R_b) = gamma - ||t_col||^2
      rb_diag = gamma - t.colwise().squaredNorm().transpose();
      mu = bg.adjoint() * llt.solve(y_batch);  // Gamma Phi^H R_y^-1 Y
    } else {
      full_posterior(gamma, j, r_b, mu);
      rb_diag = r_b.diagonal().real();
      if (cfg.observer) cfg.observer(j, gamma, mu, r_b);
    }

    // M-step
    RVec gamma_new(g);
    for (Eigen::Index i = 0; i < g; ++i) {
      double v = rb_diag(i) + mu.row(i).squaredNorm() / static_cast<double>(m);
      gamma_new(i) = std::max(v, cfg.gamma_floor);
    }
    const double diff = (gamma_new - gamma).norm();
    gamma = gamma_new;
    state.iterations = j;
    if (cfg.track_evidence) state.evidence.push_back(evidence_at(gamma));
    if (diff <= cfg.epsilon) break;
  }

  if (fast_diag)  // materialize the full posterior for the returned state
    full_posterior(gamma_estep, state.iterations, r_b, mu);

  state.gamma = gamma;
  state.mu = mu;
  state.R_b = std::move(r_b);
  return MblResult{state.mu, std::move(state)};
}

BlResult estimate_bl(const CVec& y, const CMat& phi_tilde, const CMat& r_v,
                     const BlConfig& cfg) {
  MblResult r = estimate_mbl(y, phi_tilde, r_v, cfg);
  return BlResult{r.h_b.col(0), std::move(r.state)};
}

CrlbResult bcrlb(const CMat& phi_tilde, const CMat& r_v, const RVec& gamma_oracle,
                 const CMat& psi) {
  if ((gamma_oracle.array() <= 0.0).any())
    throw ConfigError("bcrlb: oracle gamma must be strictly positive");
  auto rv_llt = llt_or_throw(r_v, "bcrlb R_v");

  CrlbResult res;
  res.j_b = phi_tilde.adjoint() * rv_llt.solve(phi_tilde);
  res.j_b.diagonal() += gamma_oracle.cwiseInverse().cast<std::complex<double>>();

  Eigen::LDLT<CMat> ldlt(res.j_b);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("bcrlb: Fisher information matrix is singular");
  const CMat j_inv = ldlt.solve(CMat::Identity(res.j_b.rows(), res.j_b.cols()));
  res.mse_bound_beamspace = std::real(j_inv.trace());
  // Tr{Psi J^-1 Psi^H} = Tr{J^-1 (Psi^H Psi)}
  const CMat gram = psi.adjoint() * psi;
  res.mse_bound_channel = std::real((j_inv.transpose().cwiseProduct(gram)).sum());
  return res;
}

double nmse(const CMat& h_hat, const CMat& h) {
  if (h_hat.rows() != h.rows() || h_hat.cols() != h.cols())
    throw ConfigError("nmse: shape mismatch");
  const double denom = h.squaredNorm();
  if (denom == 0.0) throw std::domain_error("nmse: reference matrix is zero");
  return (h_hat - h).squaredNorm() / denom;
}

}  // namespace thz
