#pragma once

#include "hypmag/model.hpp"

namespace hypmag {

// Overall sign multiplying the bracketed digamma expression of the closed
// form.  The resolved sign is the unique choice under which Q -> -inf as
// zeta -> -inf and dQ/dzeta > 0 off the spectrum; it is fixed numerically
// from the regularized-trace oracle.
struct QConvention {
  double sign = -1.0;
  bool resolved = false;
  // Max |oracle - sign * closed_form| spread observed during resolution.
  double oracle_drift = 0.0;

  // The convention the oracle procedure resolves to (cached constant).
  static QConvention standard();
  // Runs the slope test of the regularized-trace oracle for the given
  // parameters and returns the resolved convention.
  static QConvention resolve(const ModelParams& params);
};

// Q(zeta) = sign * (1/4pi)[psi(t+b) + psi(t-b) + 2 gamma - 2 ln 2a].
double q_closed_form(double zeta, const ModelParams& params,
                     const QConvention& conv);
Cplx q_closed_form(Cplx zeta, const ModelParams& params,
                   const QConvention& conv);

// Q evaluated directly from t = 1/2 + s; avoids cancellation near the
// continuum threshold (s -> 0).
double q_from_t(double t, const ModelParams& params, const QConvention& conv);

// Analytic derivative dQ/dzeta; strictly positive off the spectrum under
// the resolved convention.
double q_derivative(double zeta, const ModelParams& params,
                    const QConvention& conv);
double q_derivative_from_t(double t, const ModelParams& params,
                           const QConvention& conv);

// Threshold limit of Q (t -> 1/2), computed analytically; +infinity when
// |b| is half-integer.
double q_threshold_limit(const ModelParams& params, const QConvention& conv);

// Regularized trace of the free-resolvent kernel:
// lim_{z'->z} [G0(z,z';zeta) + (1/2pi) ln d_a(z,z')], by extrapolation over
// a shrinking vertical separation.  Requires real zeta below the first
// Landau level (or below the threshold when there are none).
double q_oracle_regularized(double zeta, const Point& z,
                            const ModelParams& params);

// Whether Q(zeta) = alpha has a root in the special interval: always for
// half-integer |b|, otherwise iff alpha lies strictly below the finite
// threshold limit of Q.
bool special_interval_solvable(double alpha, const ModelParams& params,
                               const QConvention& conv);

bool half_integer_field(const ModelParams& params);

// Coupling dictionary 2 pi alpha = ln lambda.
double alpha_from_lambda(double lambda);
double lambda_from_alpha(double alpha);

}  // namespace hypmag
