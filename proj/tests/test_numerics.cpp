#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hypmag/numerics.hpp"

using namespace hypmag;

TEST_CASE("integrate_1d: elementary integrands") {
  CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-13));

  const double expected = std::cosh(1.0) - 1.0;  // ~0.5430806348
  CHECK(integrate_1d([](double x) { return std::sinh(x); }, 0.0, 1.0) ==
        doctest::Approx(expected).epsilon(1e-12));

  // Odd integrand with a smooth window.
  const double odd = integrate_1d(
      [](double x) { return x * std::exp(-x * x); }, -1.0, 1.0);
  CHECK(std::abs(odd) < 1e-13);
}

TEST_CASE("integrate_1d: linearity") {
  auto f = [](double x) { return std::sin(3.0 * x) + 0.2; };
  auto g = [](double x) { return std::exp(-x) * x; };
  const double alpha = 2.25, beta = -0.75;
  const double lhs = integrate_1d(
      [&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 2.0);
  const double rhs = alpha * integrate_1d(f, 0.0, 2.0) +
                     beta * integrate_1d(g, 0.0, 2.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("integrate_1d: subdivision cap raises NonConvergence") {
  QuadratureSpec tight;
  tight.rel_tol = 1e-14;
  tight.abs_tol = 1e-300;
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(
      integrate_1d([](double x) { return std::sqrt(std::abs(x - 0.3171)); },
                   0.0, 1.0, tight),
      NonConvergence);
}

TEST_CASE("integrate_polar: exponential radial profile") {
  // int e^{-2r} sinh r dr = 1/3, times 2 pi.
  const auto res =
      integrate_polar([](double r, double) { return std::exp(-2.0 * r); });
  CHECK(res.value == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-10));
  CHECK(res.r_max > 5.0);
  CHECK(res.phi_nodes >= 64);
}

TEST_CASE("integrate_polar: angular mean-zero integrand vanishes") {
  const auto res = integrate_polar([](double r, double phi) {
    return std::cos(2.0 * phi) / std::cosh(r);
  });
  CHECK(std::abs(res.value) < 1e-10);
}

TEST_CASE("integrate_polar: matches a 1-d oracle") {
  // g = 1/(4 cosh^4(r/2)): the radial integral against sinh r has the
  // closed value 1/2 (oracle: dense Simpson rule below), total pi.
  auto g_rad = [](double r) {
    const double c = std::cosh(0.5 * r);
    return std::sinh(r) / (4.0 * c * c * c * c);
  };
  // Simpson oracle, independent of the adaptive machinery.
  const int n = 200000;
  const double hi = 60.0, h = hi / n;
  double simpson = g_rad(0.0) + g_rad(hi);
  for (int i = 1; i < n; ++i) simpson += (i % 2 ? 4.0 : 2.0) * g_rad(i * h);
  simpson *= h / 3.0;

  const auto res = integrate_polar([](double r, double) {
    const double c = std::cosh(0.5 * r);
    return 1.0 / (4.0 * c * c * c * c);
  });
  CHECK(res.value == doctest::Approx(2.0 * M_PI * simpson).epsilon(1e-9));
  CHECK(res.value == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("find_root: linear and digamma-zero brackets") {
  auto lin = [](double x) { return x - 2.0; };
  CHECK(find_root(lin, RootBracket::from(lin, 0.0, 5.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));

  // psi(x) = -gamma has its root at x = 1 exactly.
  auto psi_shift = [](double x) {
    // local series-free evaluation via recurrence into asymptotic region
    double acc = 0.0;
    while (x < 20.0) {
      acc -= 1.0 / x;
      x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    acc += std::log(x) - 0.5 * inv - inv2 / 12.0 + inv2 * inv2 / 120.0;
    return acc + 0.57721566490153286;
  };
  CHECK(find_root(psi_shift, RootBracket::from(psi_shift, 0.5, 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("find_root: result strictly interior, bad bracket rejected") {
  auto f = [](double x) { return std::tanh(4.0 * (x - 0.37)); };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lo(-2.0, 0.3), hi(0.4, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double a = lo(rng), b = hi(rng);
    const double x = find_root(f, RootBracket::from(f, a, b));
    CHECK(x > a);
    CHECK(x < b);
  }
  CHECK_THROWS_AS(RootBracket::from(f, 1.0, 2.0), BadBracket);
}

TEST_CASE("central_diff: polynomial exactness and known derivatives") {
  auto sq = [](double x) { return x * x; };
  CHECK(central_diff(sq, 3.0, 0.1) == doctest::Approx(6.0).epsilon(1e-13));

  auto ex = [](double x) { return std::exp(x); };
  CHECK(central_diff(ex, 0.0, 1e-2) == doctest::Approx(1.0).epsilon(1e-9));

  auto c = [](double) { return 4.2; };
  CHECK(central_diff(c, 1.0, 1e-3) == doctest::Approx(0.0));
}

TEST_CASE("central_diff: observed order >= 3.5 on smooth functions") {
  auto f = [](double x) { return std::sin(x) * std::exp(0.5 * x); };
  const double x0 = 0.7;
  const double exact = std::cos(x0) * std::exp(0.5 * x0) +
                       0.5 * std::sin(x0) * std::exp(0.5 * x0);
  const double e1 = std::abs(central_diff(f, x0, 0.2) - exact);
  const double e2 = std::abs(central_diff(f, x0, 0.1) - exact);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.5);
}
