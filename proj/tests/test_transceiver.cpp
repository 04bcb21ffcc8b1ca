#include <doctest.h>

#include <cmath>
#include <random>

#include "thz/beamspace.hpp"
#include "thz/errors.hpp"
#include "thz/transceiver.hpp"

using namespace thz;

namespace {

CMat random_cmat(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = {n(rng), n(rng)};
  return m;
}

}  // namespace

TEST_CASE("water-filling precoder") {
  Rng rng = make_rng(1);
  SUBCASE("equal singular values allocate uniformly") {
    const CMat h = 3.0 * CMat::Identity(4, 4);
    const auto res = fully_digital_precoder(h, 3, 2.0, 0.5);
    for (int i = 0; i < 3; ++i) CHECK(res.p(i) == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("huge noise pours everything on the dominant mode") {
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = 10.0;
    h(1, 1) = 0.1;
    const auto res = fully_digital_precoder(h, 2, 1.0, 50.0);
    CHECK(res.p(0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.p(1) == doctest::Approx(0.0));
  }
  SUBCASE("budget saturates for random channels") {
    for (int i = 0; i < 20; ++i) {
      const CMat h = random_cmat(6, 6, rng);
      const auto res = fully_digital_precoder(h, 4, 1.0, 0.3);
      CHECK(res.p.sum() == doctest::Approx(4.0).epsilon(1e-9));
      CHECK(res.f_opt.squaredNorm() == doctest::Approx(4.0).epsilon(1e-9));
    }
  }
  SUBCASE("stream count above the rank is rejected") {
    CMat h = CMat::Zero(4, 4);
    h(0, 0) = 1.0;
    CHECK_THROWS_AS(fully_digital_precoder(h, 2, 1.0, 0.1), ConfigError);
  }
}

TEST_CASE("MMSE combiner") {
  SUBCASE("zero channel gives a zero combiner") {
    const auto res = mmse_combiner(CMat::Zero(4, 4), CMat::Identity(4, 2), 0.5, 2);
    CHECK(res.w_m.norm() == 0.0);
  }
  SUBCASE("scalar Wiener value") {
    CMat h(1, 1);
    h << std::complex<double>(2.0, 1.0);
    const auto res = mmse_combiner(h, CMat::Identity(1, 1), 0.5, 1);
    const std::complex<double> expected = h(0, 0) / (std::norm(h(0, 0)) + 0.5);
    CHECK(std::abs(res.w_m(0, 0) - expected) < 1e-12);
  }
  SUBCASE("objective reformulation differs from the MSE by a constant") {
    // Frobenius MSE objective E||x - W^H y||^2 vs ||R_yy^{1/2}(W_M - W)||_F^2
    Rng rng = make_rng(2);
    const int n_r = 5, n_t = 4, n_s = 2;
    const double sigma2 = 0.3;
    const CMat h = random_cmat(n_r, n_t, rng);
    const CMat f = random_cmat(n_t, n_s, rng) * 0.5;
    const auto res = mmse_combiner(h, f, sigma2, n_s);
    const CMat hf = h * f;
    auto mse_of = [&](const CMat& w) {
      // E{x xH} = I/N_S, y = Hf x + v
      const CMat cross = w.adjoint() * hf / static_cast<double>(n_s);
      double val = static_cast<double>(n_s) / n_s;  // Tr E{x x^H} = 1
      val -= 2.0 * std::real(cross.trace());
      val += std::real((w.adjoint() * (hf * hf.adjoint() +
                                       n_s * sigma2 * CMat::Identity(n_r, n_r)) *
                        w)
                           .trace()) /
             n_s;
      return val;
    };
    Eigen::LLT<CMat> llt(res.r_yy);
    const CMat root = llt.matrixL();
    auto quad_of = [&](const CMat& w) {
      return (root.adjoint() * (res.w_m - w)).squaredNorm();
    };
    const double offset = mse_of(res.w_m) - quad_of(res.w_m);
    for (int i = 0; i < 10; ++i) {
      const CMat w = random_cmat(n_r, n_s, rng);
      CHECK(mse_of(w) - quad_of(w) ==
            doctest::Approx(offset).epsilon(1e-8));
    }
  }
}

TEST_CASE("hybrid stages from beamspace CSI") {
  const int n = 8, g = 10, n_rf = 3, n_s = 2;
  const auto geom = ArrayGeometry::half_wavelength(n, 0.3e12);
  const CMat a = build_dictionary(make_grid(g), geom);
  Rng rng = make_rng(3);

  SUBCASE("one-hot at the first linear index selects the first grid angle") {
    CVec h_b = CVec::Zero(g * g);
    h_b(0) = 1.0;
    const auto st = hybrid_from_beamspace(h_b, a, a, 1, a.col(0), CMat::Identity(n, n),
                                          CMat::Zero(n, 1), 1.0, 1);
    CHECK((st.f_rf.col(0) - a.col(0)).norm() < 1e-14);
    CHECK((st.w_rf.col(0) - a.col(0)).norm() < 1e-14);
  }
  SUBCASE("analog entries keep constant modulus") {
    CVec h_b = random_cmat(g * g, 1, rng);
    const CMat f_opt = random_cmat(n, n_s, rng);
    const auto st = hybrid_from_beamspace(h_b, a, a, n_rf, f_opt, CMat::Identity(n, n),
                                          CMat::Zero(n, n_s), 1.0, n_s);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n_rf; ++c)
        CHECK(std::abs(st.f_rf(r, c)) ==
              doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
  }
  SUBCASE("on-grid sparse target is matched exactly") {
    // place N_RF dominant entries on distinct rows/columns, target in the span
    CVec h_b = CVec::Zero(g * g);
    const int cols[] = {2, 5, 8};
    const int rows[] = {1, 4, 7};
    for (int i = 0; i < n_rf; ++i) h_b(cols[i] * g + rows[i]) = 3.0 - i;
    CMat coeff = random_cmat(n_rf, n_s, rng);
    CMat f_span(n, n_rf);
    for (int i = 0; i < n_rf; ++i) f_span.col(i) = a.col(cols[i]);
    CMat f_opt = f_span * coeff;
    const double p_total = f_opt.squaredNorm() / n_s;  // budget matches the target
    const auto st = hybrid_from_beamspace(h_b, a, a, n_rf, f_opt, CMat::Identity(n, n),
                                          CMat::Zero(n, n_s), p_total, n_s);
    CHECK((f_opt - st.f_rf * st.f_bb).norm() <= 1e-8 * f_opt.norm());
  }
  SUBCASE("precoder power is re-projected onto the budget") {
    CVec h_b = random_cmat(g * g, 1, rng);
    const CMat f_opt = random_cmat(n, n_s, rng);
    const auto st = hybrid_from_beamspace(h_b, a, a, n_rf, f_opt, CMat::Identity(n, n),
                                          CMat::Zero(n, n_s), 2.0, n_s);
    CHECK((st.f_rf * st.f_bb).squaredNorm() == doctest::Approx(4.0).epsilon(1e-9));
  }
  SUBCASE("combiner stage solves the weighted least-squares system") {
    CVec h_b = random_cmat(g * g, 1, rng);
    const CMat h = random_cmat(n, n, rng);
    const CMat f_opt = random_cmat(n, n_s, rng);
    const auto mc = mmse_combiner(h, f_opt, 0.2, n_s);
    const auto st =
        hybrid_from_beamspace(h_b, a, a, n_rf, f_opt, mc.r_yy, mc.w_m, 1.0, n_s);
    const CMat lhs = st.w_rf.adjoint() * mc.r_yy * st.w_rf;
    const CMat rhs = st.w_rf.adjoint() * mc.r_yy * mc.w_m;
    CHECK((lhs * st.w_bb - rhs).norm() <= 1e-9 * rhs.norm());
  }
}

TEST_CASE("spectral efficiency") {
  SUBCASE("zero channel carries nothing") {
    CHECK(ase(CMat::Zero(4, 4), CMat::Identity(4, 2), CMat::Identity(4, 2), 0.5, 2) ==
          doctest::Approx(0.0));
  }
  SUBCASE("scalar Shannon value") {
    CMat h(1, 1);
    h << std::complex<double>(1.5, -0.5);
    const double c = ase(h, CMat::Identity(1, 1), CMat::Identity(1, 1), 1.0, 1);
    CHECK(c == doctest::Approx(std::log2(1.0 + std::norm(h(0, 0)))).epsilon(1e-12));
  }
  SUBCASE("nonnegative on random instances") {
    Rng rng = make_rng(4);
    for (int i = 0; i < 10; ++i) {
      const CMat h = random_cmat(6, 6, rng);
      const CMat f = random_cmat(6, 2, rng);
      const CMat w = random_cmat(6, 2, rng);
      CHECK(ase(h, f, w, 0.5, 2) >= 0.0);
    }
  }
}

TEST_CASE("QPSK error rate") {
  Rng rng = make_rng(5);
  const CMat h = random_cmat(4, 4, rng) + 4.0 * CMat::Identity(4, 4);
  const auto wf = fully_digital_precoder(h, 2, 1.0, 0.01);
  const auto mc = mmse_combiner(h, wf.f_opt, 0.01, 2);

  SUBCASE("noiseless link is error free") {
    Rng r = make_rng(6);
    CHECK(ber_qpsk(h, wf.f_opt, mc.w_m, 0.0, 10000, r) == doctest::Approx(0.0));
  }
  SUBCASE("overwhelming noise approaches a coin flip") {
    Rng r = make_rng(7);
    CHECK(ber_qpsk(h, wf.f_opt, mc.w_m, 1e6, 10000, r) ==
          doctest::Approx(0.5).epsilon(0.04));
  }
  SUBCASE("less noise, fewer errors at matched seeds") {
    Rng r1 = make_rng(8), r2 = make_rng(8);
    const double high = ber_qpsk(h, wf.f_opt, mc.w_m, 10.0, 10000, r1);
    const double low = ber_qpsk(h, wf.f_opt, mc.w_m, 0.5, 10000, r2);
    CHECK(low <= high);
  }
}
