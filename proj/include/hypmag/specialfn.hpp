#pragma once

#include <complex>

#include "hypmag/errors.hpp"

namespace hypmag::specialfn {

using Cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// Principal branch of log Gamma (real on the positive real axis, continuous
// off the cut along the negative reals).  Throws PoleArgument at nonpositive
// integers.
Cplx ln_gamma(Cplx z);
double ln_gamma(double x);  // x > 0

Cplx digamma(Cplx z);
double digamma(double x);

Cplx trigamma(Cplx z);
double trigamma(double x);

// Parameters of 2F1(p, q; c; x) restricted to the logarithmic line c = p + q
// with real x in (0, 1].  Construction enforces c = p + q exactly.
struct Hyp2F1Params {
  Cplx p;
  Cplx q;
  Cplx c;
  double x;

  static Hyp2F1Params make(Cplx p, Cplx q, double x);
};

// 2F1(p, q; p+q; x): defining power series for x <= 1/2, logarithmic
// connection formula in 1-x for x > 1/2.  Near-nonpositive-integer p or q
// switches to the terminating degenerate expansion.
Cplx hyp2f1_log_case(const Hyp2F1Params& params);

// Complex logarithm of the same function.  For large |p|, |q| the value
// overflows a double while its log stays modest (the connection prefactor
// Gamma(c)/(Gamma(p)Gamma(q)) grows like exp(2 Re p ln 2)); resolvent
// kernels must combine this with log-space Gamma ratios.
Cplx hyp2f1_log_case_ln(const Hyp2F1Params& params);

}  // namespace hypmag::specialfn
