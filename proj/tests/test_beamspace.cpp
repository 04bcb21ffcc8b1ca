#include <doctest.h>

#include <cmath>
#include <random>

#include "thz/beamspace.hpp"
#include "thz/errors.hpp"

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

TEST_CASE("angular grid") {
  SUBCASE("G = 4 cosines") {
    const auto g = make_grid(4);
    REQUIRE(g.size == 4);
    const double expect[] = {-1.0, -0.5, 0.0, 0.5};
    for (int i = 0; i < 4; ++i) CHECK(g.cosines[i] == doctest::Approx(expect[i]));
  }
  SUBCASE("G = 1 degenerates to cosine -1") {
    const auto g = make_grid(1);
    CHECK(g.cosines[0] == -1.0);
  }
  SUBCASE("G = 36 has exact spacing 2/36") {
    const auto g = make_grid(36);
    for (int i = 1; i < 36; ++i)
      CHECK(g.cosines[i] - g.cosines[i - 1] == doctest::Approx(2.0 / 36).epsilon(1e-14));
  }
  SUBCASE("G = 0 rejected") { CHECK_THROWS_AS(make_grid(0), ConfigError); }
}

TEST_CASE("beamspace dictionary") {
  SUBCASE("semi-unitary at half-wavelength spacing") {
    for (auto [n, g] : {std::pair{16, 20}, std::pair{32, 36}}) {
      const auto a = build_dictionary(make_grid(g), ArrayGeometry::half_wavelength(n, 0.3e12));
      const CMat gram = a * a.adjoint() -
                        (static_cast<double>(g) / n) * CMat::Identity(n, n);
      CHECK(gram.norm() <= 1e-10);
    }
  }
  SUBCASE("square grid is unitary up to scale") {
    const auto a = build_dictionary(make_grid(16), ArrayGeometry::half_wavelength(16, 0.3e12));
    CHECK((a.adjoint() * a - CMat::Identity(16, 16)).norm() <= 1e-10);
  }
  SUBCASE("columns are unit norm") {
    const auto a = build_dictionary(make_grid(20), ArrayGeometry::half_wavelength(16, 0.3e12));
    for (int i = 0; i < 20; ++i) CHECK(a.col(i).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("sounding design") {
  const auto d = design_sounding(16, 16, 4, 12, 12);
  SUBCASE("frame and combining counts") {
    CHECK(d.n_frames == 4);
    CHECK(d.n_comb == 4);
  }
  SUBCASE("RF stages are unitary constant-modulus") {
    CHECK((d.F_RF * d.F_RF.adjoint() - CMat::Identity(16, 16)).norm() < 1e-10);
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c)
        CHECK(std::abs(d.F_RF(r, c)) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("pilot blocks have unit singular values") {
    for (int i = 0; i < d.n_frames; ++i) {
      const CMat block = d.X_p.block(i * d.n_rf, i * (d.m_tx / d.n_frames), d.n_rf,
                                     d.m_tx / d.n_frames);
      Eigen::JacobiSVD<CMat> svd(block);
      for (int k = 0; k < svd.singularValues().size(); ++k)
        CHECK(std::abs(svd.singularValues()(k) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("pilot Gram norm attains the analytic minimum M_T/N_F") {
    for (int i = 0; i < d.n_frames; ++i) {
      const CMat block = d.X_p.block(i * d.n_rf, i * (d.m_tx / d.n_frames), d.n_rf,
                                     d.m_tx / d.n_frames);
      const CMat gram = block.transpose() * block.conjugate();
      CHECK(gram.squaredNorm() ==
            doctest::Approx(static_cast<double>(d.m_tx) / d.n_frames).epsilon(1e-12));
    }
  }
  SUBCASE("combiner satisfies W_BB^H W_BB = I") {
    CHECK((d.W_BB.adjoint() * d.W_BB - CMat::Identity(12, 12)).norm() < 1e-12);
  }
  SUBCASE("divisibility violations rejected") {
    CHECK_THROWS_AS(design_sounding(16, 16, 3, 12, 12), ConfigError);
    CHECK_THROWS_AS(design_sounding(16, 16, 4, 13, 12), ConfigError);
  }
}

TEST_CASE("total coherence") {
  Rng rng = make_rng(17);
  SUBCASE("orthogonal columns have zero coherence") {
    CHECK(total_coherence(CMat::Identity(4, 4)).total == doctest::Approx(0.0));
  }
  SUBCASE("two identical unit columns give 2") {
    CMat m(3, 2);
    m.col(0) = CVec::Zero(3);
    m(0, 0) = 1.0;
    m.col(1) = m.col(0);
    CHECK(total_coherence(m).total == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("matches a brute-force double loop") {
    const CMat m = random_cmat(6, 9, rng);
    double brute = 0.0;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (i != j) brute += std::norm(m.col(i).dot(m.col(j)));
    const auto res = total_coherence(m);
    CHECK(res.total == doctest::Approx(brute).epsilon(1e-10));
    CHECK(res.bound >= res.total);
    CHECK(res.bound == doctest::Approx((m * m.adjoint()).squaredNorm()).epsilon(1e-10));
  }
  SUBCASE("single column rejected") {
    CHECK_THROWS_AS(total_coherence(CMat::Ones(3, 1)), ConfigError);
  }
}

TEST_CASE("sensing operator") {
  const auto design = design_sounding(16, 16, 4, 12, 12);
  const auto geom = ArrayGeometry::half_wavelength(16, 0.3e12);
  const auto a = build_dictionary(make_grid(20), geom);
  const auto op = sensing_operator(design, a, a, 0.25);

  SUBCASE("dimensions for the reference small system") {
    CHECK(op.Phi_tilde.rows() == 144);
    CHECK(op.Phi_tilde.cols() == 400);
    CHECK(op.Psi.rows() == 256);
    CHECK(op.Psi.cols() == 400);
  }
  SUBCASE("equivalent matrix equals Phi * Psi") {
    CHECK((op.Phi_tilde - op.Phi * op.Psi).norm() <= 1e-12 * op.Phi_tilde.norm());
  }
  SUBCASE("noise covariance is exactly sigma^2 I under this design") {
    CHECK((op.R_v - 0.25 * CMat::Identity(144, 144)).norm() == 0.0);
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(sensing_operator(design, a.topRows(8), a, 1.0), ConfigError);
  }
}

TEST_CASE("sounding simulation") {
  const auto design = design_sounding(8, 8, 2, 4, 4);
  const auto geom = ArrayGeometry::half_wavelength(8, 0.3e12);
  const auto a = build_dictionary(make_grid(10), geom);
  const auto op = sensing_operator(design, a, a, 1.0);
  Rng rng = make_rng(23);
  const CMat H = random_cmat(8, 8, rng);

  SUBCASE("noiseless sounding equals Phi vec(H)") {
    Rng r = make_rng(1);
    const CVec y = simulate_sounding(H, design, 0.0, r);
    const CVec h = Eigen::Map<const CVec>(H.data(), H.size());
    CHECK((y - op.Phi * h).norm() <= 1e-12 * y.norm());
  }
  SUBCASE("fixed seed reproduces the measurement") {
    Rng r1 = make_rng(5), r2 = make_rng(5);
    const CVec y1 = simulate_sounding(H, design, 0.5, r1);
    const CVec y2 = simulate_sounding(H, design, 0.5, r2);
    CHECK((y1 - y2).norm() == 0.0);
  }
  SUBCASE("noise sample covariance approaches R_v") {
    const double sigma2 = 1.0;
    Rng r = make_rng(77);
    const int n_draws = 40000;
    const CVec y0 = [&] {
      Rng rr = make_rng(0);
      return simulate_sounding(H, design, 0.0, rr);
    }();
    CMat cov = CMat::Zero(16, 16);
    for (int i = 0; i < n_draws; ++i) {
      const CVec v = simulate_sounding(H, design, sigma2, r) - y0;
      cov += v * v.adjoint();
    }
    cov /= n_draws;
    const CMat r_v = sigma2 * CMat::Identity(16, 16);
    // spectral error of a 16-dim sample covariance from 4e4 draws is ~0.04
    Eigen::JacobiSVD<CMat> svd(cov - r_v);
    CHECK(svd.singularValues()(0) <= 0.08 * sigma2);
  }
  SUBCASE("batch stacks independent noise realizations") {
    Rng r = make_rng(9);
    const CMat y = simulate_sounding_batch(H, design, 0.3, 5, r);
    CHECK(y.cols() == 5);
    CHECK((y.col(0) - y.col(1)).norm() > 0.0);
  }
}

TEST_CASE("beamspace to channel map") {
  const auto geom = ArrayGeometry::half_wavelength(8, 0.3e12);
  const auto a = build_dictionary(make_grid(10), geom);
  SUBCASE("zero maps to zero") {
    CHECK(beamspace_to_channel(CVec::Zero(100), a, a).norm() == 0.0);
  }
  SUBCASE("one-hot pulls out one outer product") {
    CVec h_b = CVec::Zero(100);
    const int row = 3, col = 7;  // column-major linear index
    h_b(col * 10 + row) = 1.0;
    const CMat expected = a.col(row) * a.col(col).adjoint();
    CHECK((beamspace_to_channel(h_b, a, a) - expected).norm() < 1e-14);
  }
  SUBCASE("consistent with the Kronecker dictionary") {
    Rng rng = make_rng(31);
    const CVec h_b = random_cmat(100, 1, rng);
    const auto design = design_sounding(8, 8, 2, 4, 4);
    const auto op = sensing_operator(design, a, a, 1.0);
    const CMat h = beamspace_to_channel(h_b, a, a);
    const CVec lhs = op.Psi * h_b;
    const CVec rhs = Eigen::Map<const CVec>(h.data(), h.size());
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
  SUBCASE("length mismatch rejected") {
    CHECK_THROWS_AS(beamspace_to_channel(CVec::Zero(99), a, a), ConfigError);
  }
}
