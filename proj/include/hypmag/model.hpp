#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "hypmag/geometry.hpp"

namespace hypmag {

using Cplx = std::complex<double>;

// Curvature radius a (R = -2/a^2), reduced field b = B a^2, and the weight
// of the constant curvature term; units e = c = hbar = 2m* = 1.
struct ModelParams {
  double a = 1.0;
  double b = 0.0;
  double nu = 1.0;

  void validate() const {
    if (!(a > 0.0)) throw DomainError("ModelParams: a must be positive");
  }
};

// Landau levels E0_n = (1/a^2)(b^2 - (|b|-n-1/2)^2) for 0 <= n < |b| - 1/2;
// empty for weak fields 2|b| <= 1.
std::vector<std::pair<int, double>> landau_levels(const ModelParams& params);

// Bottom of the continuous spectrum, b^2/a^2.
double threshold(const ModelParams& params);

// t(zeta) = 1/2 + sqrt(b^2 - a^2 zeta), principal square root (Re >= 0).
// Throws DomainError on the cut [b^2/a^2, inf).
Cplx t_of_zeta(Cplx zeta, const ModelParams& params);
double t_of_zeta(double zeta, const ModelParams& params);

// Unit-modulus gauge factor (-(z - conj(w)) / (conj(z) - w))^b with the
// principal logarithm.
Cplx phase_factor(const Point& z, const Point& w, double b);

// Free-resolvent kernel
//   G0(z,z';zeta) = (1/4pi) phase * Gamma(t+b)Gamma(t-b)/Gamma(2t)
//                   * sigma^{-t} * 2F1(t+b, t-b; 2t; 1/sigma).
Cplx green0(const Point& z, const Point& zp, Cplx zeta,
            const ModelParams& params);
Cplx green0(const Point& z, const Point& zp, double zeta,
            const ModelParams& params);

// Finite-difference application of the free Hamiltonian,
//   (1/a^2)[-y^2 (f_xx + f_yy) - 2 i b y f_x + b^2 f] - (nu/4a^2) f,
// with O(h^2) truncation.  The sign of the first-order term is fixed by the
// requirement (H0 - zeta) green0 = 0 off the diagonal.
Cplx apply_H0_fd(const std::function<Cplx(Point)>& f, const Point& z, double h,
                 const ModelParams& params);

}  // namespace hypmag
