#include <doctest.h>

#include <cmath>
#include <random>

#include "thz/beamspace.hpp"
#include "thz/errors.hpp"
#include "thz/estimators.hpp"

using namespace thz;

namespace {

CMat random_cmat(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = {n(rng), n(rng)};
  return m;
}

// equivalent sensing matrix of the small 8-antenna reference setup (16 x 100)
CMat small_phi_tilde() {
  const auto design = design_sounding(8, 8, 2, 4, 4);
  const auto geom = ArrayGeometry::half_wavelength(8, 0.3e12);
  const auto a = build_dictionary(make_grid(10), geom);
  return sensing_operator(design, a, a, 1.0).Phi_tilde;
}

}  // namespace

TEST_CASE("least squares baseline") {
  Rng rng = make_rng(1);
  SUBCASE("invertible noiseless system is recovered") {
    const CMat phi = random_cmat(6, 6, rng);
    const CVec h = random_cmat(6, 1, rng);
    const CVec h_hat = estimate_ls(phi * h, phi);
    CHECK((h_hat - h).norm() <= 1e-8 * h.norm());
  }
  SUBCASE("zero measurement gives the zero estimate") {
    const CMat phi = random_cmat(6, 10, rng);
    CHECK(estimate_ls(CVec::Zero(6), phi).norm() == 0.0);
  }
  SUBCASE("under-determined solve has zero residual") {
    const CMat phi = random_cmat(6, 10, rng);
    const CVec y = random_cmat(6, 1, rng);
    const CVec h_hat = estimate_ls(y, phi);
    CHECK((phi * h_hat - y).norm() <= 1e-8 * y.norm());
  }
}

TEST_CASE("linear MMSE baseline") {
  Rng rng = make_rng(2);
  SUBCASE("scalar Wiener arithmetic") {
    CMat phi(1, 1), r_h(1, 1), r_v(1, 1);
    phi << 1.0;
    r_h << 1.0;
    r_v << 1.0;
    CVec y(1);
    y << 2.0;
    CHECK(std::abs(estimate_mmse(y, phi, r_h, r_v)(0) - std::complex<double>(1.0)) <
          1e-12);
  }
  SUBCASE("diffuse prior approaches least squares") {
    const CMat phi = random_cmat(12, 6, rng);
    const CVec y = random_cmat(12, 1, rng);
    const CMat r_h = 1e9 * CMat::Identity(6, 6);
    const CMat r_v = CMat::Identity(12, 12);
    const CVec mmse = estimate_mmse(y, phi, r_h, r_v);
    const CVec ls = estimate_ls(y, phi);
    CHECK((mmse - ls).norm() <= 1e-3 * ls.norm());
  }
  SUBCASE("overwhelming noise shrinks the estimate to zero") {
    const CMat phi = random_cmat(12, 6, rng);
    const CVec y = random_cmat(12, 1, rng);
    const CMat r_h = CMat::Identity(6, 6);
    const CMat r_v = 1e12 * CMat::Identity(12, 12);
    CHECK(estimate_mmse(y, phi, r_h, r_v).norm() <= 1e-5);
  }
}

TEST_CASE("orthogonal matching pursuit") {
  const CMat phi = small_phi_tilde();
  OmpConfig cfg;
  cfg.epsilon_t = 1e-12;
  SUBCASE("single atom recovered exactly") {
    const std::complex<double> c{1.3, -0.4};
    const CVec y = phi.col(7) * c;
    const auto res = estimate_omp(y, phi, cfg);
    REQUIRE(res.support.size() == 1);
    CHECK(res.support[0] == 7);
    CHECK(std::abs(res.h_b(7) - c) < 1e-10);
  }
  SUBCASE("zero measurement yields empty support") {
    const auto res = estimate_omp(CVec::Zero(phi.rows()), phi, cfg);
    CHECK(res.support.empty());
    CHECK(res.h_b.norm() == 0.0);
  }
  SUBCASE("residual energies never increase") {
    Rng rng = make_rng(3);
    const CVec y = random_cmat(static_cast<int>(phi.rows()), 1, rng);
    OmpConfig noisy = cfg;
    noisy.epsilon_t = 1e-6;
    const auto res = estimate_omp(y, phi, noisy);
    for (std::size_t i = 1; i < res.residual_energies.size(); ++i)
      CHECK(res.residual_energies[i] <= res.residual_energies[i - 1] + 1e-12);
  }
  SUBCASE("iteration cap sets the truncation flag") {
    Rng rng = make_rng(4);
    const CVec y = random_cmat(static_cast<int>(phi.rows()), 1, rng);
    OmpConfig capped = cfg;
    capped.max_iters = 2;
    capped.epsilon_t = 1e-15;
    const auto res = estimate_omp(y, phi, capped);
    CHECK(res.truncated);
    CHECK(res.support.size() == 2);
  }
  SUBCASE("invalid stopping parameter rejected") {
    OmpConfig bad;
    bad.epsilon_t = 0.0;
    CHECK_THROWS_AS(estimate_omp(CVec::Zero(phi.rows()), phi, bad), ConfigError);
  }
}

TEST_CASE("Bayesian learning") {
  const CMat phi = small_phi_tilde();
  const Eigen::Index n = phi.rows();
  const CMat r_v = 0.1 * CMat::Identity(n, n);
  BlConfig cfg;

  SUBCASE("zero measurement decays the hyperparameters monotonically") {
    const auto res = estimate_bl(CVec::Zero(n), phi, r_v, cfg);
    CHECK(res.h_b.norm() == 0.0);
    CHECK((res.state.gamma.array() < 1.0).all());
  }
  SUBCASE("noiseless one-sparse concentrates on the true atom") {
    CVec y = phi.col(42) * std::complex<double>(2.0, 1.0);
    BlConfig tight = cfg;
    tight.k_max = 200;
    const auto res = estimate_bl(y, phi, 1e-10 * CMat::Identity(n, n), tight);
    const double total = res.h_b.squaredNorm();
    const double off = total - std::norm(res.h_b(42));
    CHECK(off < 1e-6 * total);
  }
  SUBCASE("evidence is non-decreasing across EM iterations") {
    Rng rng = make_rng(6);
    const CVec y = random_cmat(static_cast<int>(n), 1, rng);
    const auto res = estimate_bl(y, phi, r_v, cfg);
    REQUIRE(res.state.evidence.size() >= 2);
    for (std::size_t i = 1; i < res.state.evidence.size(); ++i)
      CHECK(res.state.evidence[i] >= res.state.evidence[i - 1] - 1e-9);
  }
  SUBCASE("posterior mean matches the covariance-form MMSE expression") {
    Rng rng = make_rng(7);
    const CVec y = random_cmat(static_cast<int>(n), 1, rng);
    BlConfig observed = cfg;
    observed.k_max = 5;
    int checked = 0;
    observed.observer = [&](int, const RVec& gamma, const CMat& mu, const CMat& r_b) {
      const CMat pg = phi * gamma.asDiagonal();
      const CMat r_y = r_v + pg * phi.adjoint();
      const CVec mu_alt = pg.adjoint() * r_y.llt().solve(y);
      CHECK((mu.col(0) - mu_alt).norm() <= 1e-10 * (1.0 + mu_alt.norm()));
      // Woodbury consistency of the posterior covariance
      const CMat direct =
          (phi.adjoint() * r_v.llt().solve(phi) +
           CMat(gamma.cwiseInverse().cast<std::complex<double>>().asDiagonal()))
              .ldlt()
              .solve(CMat::Identity(phi.cols(), phi.cols()));
      CHECK((r_b - direct).norm() <= 1e-8 * direct.norm());
      ++checked;
    };
    estimate_bl(y, phi, r_v, observed);
    CHECK(checked >= 1);
  }
}

TEST_CASE("multiple-measurement Bayesian learning") {
  const CMat phi = small_phi_tilde();
  const Eigen::Index n = phi.rows();
  const CMat r_v = 0.1 * CMat::Identity(n, n);
  BlConfig cfg;
  Rng rng = make_rng(8);
  const CVec y = random_cmat(static_cast<int>(n), 1, rng);

  SUBCASE("single column reduces bit-identically to BL") {
    const auto single = estimate_bl(y, phi, r_v, cfg);
    const auto multi = estimate_mbl(y, phi, r_v, cfg);
    CHECK((single.h_b - multi.h_b.col(0)).norm() == 0.0);
    CHECK((single.state.gamma - multi.state.gamma).norm() == 0.0);
  }
  SUBCASE("identical columns recover the single-column estimate") {
    CMat y5(n, 5);
    for (int c = 0; c < 5; ++c) y5.col(c) = y;
    const auto single = estimate_bl(y, phi, r_v, cfg);
    const auto multi = estimate_mbl(y5, phi, r_v, cfg);
    for (int c = 0; c < 5; ++c)
      CHECK((multi.h_b.col(c) - single.h_b).norm() <= 1e-10 * single.h_b.norm());
  }
}

TEST_CASE("Bayesian bound") {
  const CMat phi = small_phi_tilde();
  const Eigen::Index n = phi.rows();
  const Eigen::Index g = phi.cols();
  Rng rng = make_rng(9);

  SUBCASE("zero sensing matrix leaves only the prior information") {
    RVec gamma = RVec::Constant(g, 0.5);
    const auto res = bcrlb(CMat::Zero(n, g), CMat::Identity(n, n), gamma,
                           CMat::Identity(g, g));
    CHECK(res.mse_bound_beamspace == doctest::Approx(gamma.sum()).epsilon(1e-10));
  }
  SUBCASE("vanishing noise drives the bound to zero on a full-rank system") {
    const CMat a = random_cmat(12, 6, rng);
    RVec gamma = RVec::Ones(6);
    const auto res =
        bcrlb(a, 1e-12 * CMat::Identity(12, 12), gamma, CMat::Identity(6, 6));
    CHECK(res.mse_bound_beamspace < 1e-9);
  }
  SUBCASE("larger prior variances never shrink the bound") {
    const CMat a = random_cmat(10, 8, rng);
    const CMat r_v = CMat::Identity(10, 10);
    RVec gamma = RVec::Ones(8);
    const auto small = bcrlb(a, r_v, gamma, CMat::Identity(8, 8));
    const auto large = bcrlb(a, r_v, RVec(2.0 * gamma), CMat::Identity(8, 8));
    CHECK(large.mse_bound_beamspace >= small.mse_bound_beamspace - 1e-12);
  }
  SUBCASE("nonpositive oracle variances rejected") {
    CHECK_THROWS_AS(
        bcrlb(phi, CMat::Identity(n, n), RVec::Zero(g), CMat::Identity(g, g)),
        ConfigError);
  }
}

TEST_CASE("normalized mean squared error") {
  Rng rng = make_rng(10);
  const CMat h = random_cmat(4, 4, rng);
  CHECK(nmse(h, h) == doctest::Approx(0.0));
  CHECK(nmse(CMat::Zero(4, 4), h) == doctest::Approx(1.0));
  CHECK(nmse(CMat(2.0 * h), h) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nmse(h, CMat::Zero(4, 4)), std::domain_error);
  CHECK_THROWS_AS(nmse(h, CMat::Zero(3, 4)), ConfigError);
}
