#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hypmag/model.hpp"

using namespace hypmag;

TEST_CASE("landau_levels: counts and values") {
  // b = 3, a = 1: three levels below threshold 9.
  ModelParams p{1.0, 3.0, 1.0};
  const auto lv = landau_levels(p);
  REQUIRE(lv.size() == 3);
  CHECK(lv[0].first == 0);
  CHECK(lv[0].second == doctest::Approx(9.0 - 2.5 * 2.5).epsilon(1e-14));
  CHECK(lv[1].second == doctest::Approx(9.0 - 1.5 * 1.5).epsilon(1e-14));
  CHECK(lv[2].second == doctest::Approx(9.0 - 0.5 * 0.5).epsilon(1e-14));

  // Half-integer b = 2.5: n < 2 strictly, so two levels (the n = 2 state
  // merges with the threshold and is excluded).
  CHECK(landau_levels({1.0, 2.5, 1.0}).size() == 2);
  // Weak fields carry no discrete Landau levels at all.
  CHECK(landau_levels({1.0, 0.5, 1.0}).empty());
  CHECK(landau_levels({1.0, 0.0, 1.0}).empty());
  CHECK(landau_levels({1.0, -0.3, 1.0}).empty());
  // Sign of b is immaterial.
  const auto neg = landau_levels({1.0, -3.0, 1.0});
  REQUIRE(neg.size() == 3);
  CHECK(neg[1].second == doctest::Approx(lv[1].second).epsilon(1e-14));
}

TEST_CASE("landau_levels: ordering and threshold bound") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> as(0.4, 2.5), bs(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    ModelParams p{as(rng), bs(rng), 1.0};
    const auto lv = landau_levels(p);
    const double thr = threshold(p);
    const std::size_t expected =
        std::abs(p.b) > 0.5
            ? static_cast<std::size_t>(std::ceil(std::abs(p.b) - 0.5 -
                                                 1e-15))
            : 0u;
    // Count check is tolerant only at the exact half-integer boundary.
    if (std::abs(std::abs(p.b) - 0.5 - std::round(std::abs(p.b) - 0.5)) >
        1e-12)
      CHECK(lv.size() == expected);
    for (std::size_t n = 0; n < lv.size(); ++n) {
      CHECK(lv[n].second < thr);
      if (n > 0) CHECK(lv[n].second > lv[n - 1].second);
    }
  }
}

TEST_CASE("t_of_zeta: defining relation and cut") {
  ModelParams p{1.0, 3.0, 1.0};
  CHECK(t_of_zeta(0.0, p) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(t_of_zeta(-7.0, p) == doctest::Approx(4.5).epsilon(1e-14));
  // Complex: t solves (t - 1/2)^2 = b^2 - a^2 zeta with Re(t) >= 1/2.
  const Cplx zeta(2.0, 1.5);
  const Cplx t = t_of_zeta(zeta, p);
  const Cplx lhs = (t - 0.5) * (t - 0.5);
  CHECK(std::abs(lhs - (p.b * p.b - zeta)) < 1e-12);
  CHECK(t.real() >= 0.5);
  // Real evaluation on the cut is rejected.
  CHECK_THROWS_AS(t_of_zeta(9.0, p), DomainError);
  CHECK_THROWS_AS(t_of_zeta(12.0, p), DomainError);
}

TEST_CASE("phase_factor: unit modulus and b-additivity") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> xs(-3.0, 3.0), ys(0.2, 4.0),
      bs(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const Point z{xs(rng), ys(rng)}, w{xs(rng), ys(rng)};
    const double b = bs(rng);
    const Cplx ph = phase_factor(z, w, b);
    CHECK(std::abs(std::abs(ph) - 1.0) < 1e-14);
    // Exponent additivity (principal branch is used consistently).
    const Cplx prod = phase_factor(z, w, 0.5 * b) * phase_factor(z, w, 0.5 * b);
    CHECK(std::abs(prod - ph) < 1e-12);
  }
  // b = 0 trivializes the gauge factor.
  CHECK(std::abs(phase_factor({1.0, 2.0}, {-1.0, 0.5}, 0.0) - Cplx(1.0)) <
        1e-15);
}

TEST_CASE("green0: Hermitian symmetry of the kernel") {
  ModelParams p{1.0, 2.0, 1.0};
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> xs(-2.0, 2.0), ys(0.3, 3.0);
  for (int i = 0; i < 40; ++i) {
    const Point z{xs(rng), ys(rng)}, w{xs(rng), ys(rng)};
    const double zeta = -1.7;  // real, below the spectrum
    const Cplx g = green0(z, w, zeta, p);
    const Cplx gt = green0(w, z, zeta, p);
    CHECK(std::abs(g - std::conj(gt)) <= 1e-12 * std::abs(g));
  }
}

TEST_CASE("green0: resolvent reality of sigma-part and decay in distance") {
  ModelParams p{1.0, 2.0, 1.0};
  const Point w{0.0, 1.0};
  double prev = 1e300;
  for (double r : {0.5, 1.0, 2.0, 4.0, 6.0}) {
    const Point z{0.0, std::exp(r)};
    const double mag = std::abs(green0(z, w, -3.0, p));
    CHECK(mag < prev);
    CHECK(mag > 0.0);
    prev = mag;
  }
}

TEST_CASE("green0: diagonal guard") {
  ModelParams p{1.0, 1.5, 1.0};
  const Point z{0.4, 1.2};
  CHECK_THROWS_AS(green0(z, z, -1.0, p), DiagonalSingularity);
}

TEST_CASE("green0 satisfies the resolvent PDE pointwise (finite differences)") {
  // (H0 - zeta) G0(.; w, zeta) = 0 away from w.
  ModelParams p{1.0, 2.0, 1.0};
  const Point w{0.0, 1.0};
  const double zeta = -2.0;
  auto g = [&](Point z) { return green0(z, w, zeta, p); };
  for (const Point z : {Point{0.8, 1.6}, Point{-0.5, 0.9}, Point{0.3, 2.4}}) {
    const double h = 5e-4 * z.y;
    const Cplx residual = apply_H0_fd(g, z, h, p) - zeta * g(z);
    CHECK(std::abs(residual) <= 1e-5 * std::abs(g(z)));
  }
}

TEST_CASE("green0: scaling covariance under dilation isometry") {
  // The kernel depends on z, z' only through sigma (plus the gauge phase),
  // both invariant under (x,y) -> (lam x, lam y); so is G0 itself.
  ModelParams p{1.0, 1.8, 1.0};
  const Point z{0.5, 1.1}, w{-0.3, 2.2};
  const double lam = 2.7, zeta = -4.0;
  const Cplx g1 = green0(z, w, zeta, p);
  const Cplx g2 =
      green0({lam * z.x, lam * z.y}, {lam * w.x, lam * w.y}, zeta, p);
  CHECK(std::abs(g1 - g2) <= 1e-11 * std::abs(g1));
}
