#pragma once

#include <complex>
#include <functional>

#include "hypmag/errors.hpp"

namespace hypmag {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  // Relative integrand magnitude below which the radial integration of
  // integrate_polar is cut off.
  double truncation_threshold = 1e-16;
};

struct RootBracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  // Evaluates f at both endpoints; throws BadBracket unless the signs are
  // strictly opposite.
  static RootBracket from(const std::function<double(double)>& f, double lo,
                          double hi);
};

struct PolarResult {
  double value;
  double r_max;     // radial cutoff actually used
  int phi_nodes;    // angular node count at convergence
};

struct PolarResultC {
  std::complex<double> value;
  double r_max;
  int phi_nodes;
};

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [lo, hi].
double integrate_1d(const std::function<double(double)>& f, double lo,
                    double hi, const QuadratureSpec& spec = {});

std::complex<double> integrate_1d_complex(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    const QuadratureSpec& spec = {});

// Integral of g(r, phi) sinh(r) dr dphi over r in (0, inf), phi in [0, 2pi).
// Product rule: adaptive radial panels times a uniform periodic trapezoid in
// phi (node count doubled from 64 until converged).  The radial integration
// stops once three consecutive unit panels fall below
// truncation_threshold x |accumulated|.
PolarResult integrate_polar(const std::function<double(double, double)>& g,
                            const QuadratureSpec& spec = {});

PolarResultC integrate_polar_complex(
    const std::function<std::complex<double>(double, double)>& g,
    const QuadratureSpec& spec = {});

// Safeguarded secant/bisection hybrid; returns x* strictly inside the
// bracket with |f(x*)| <= tol.
double find_root(const std::function<double(double)>& f,
                 const RootBracket& bracket, double tol = 1e-12);

// Richardson-extrapolated central difference, O(h^4) on smooth functions.
// Works for any value type supporting the arithmetic below (double,
// std::complex<double>).
template <typename F>
auto central_diff(F&& f, double x, double h) {
  auto two_sided = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  auto coarse = two_sided(h);
  auto fine = two_sided(h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace hypmag
