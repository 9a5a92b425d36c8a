#include "hypmag/krein.hpp"

#include <cmath>
#include <limits>

#include "hypmag/specialfn.hpp"

namespace hypmag {

namespace sf = specialfn;

namespace {

// Raw bracketed expression (1/4pi)[psi(t+b) + psi(t-b) + 2 gamma - 2 ln 2a].
double raw_bracket(double t, const ModelParams& params) {
  return (sf::digamma(t + params.b) + sf::digamma(t - params.b) +
          2.0 * sf::kEulerGamma - 2.0 * std::log(2.0 * params.a)) /
         (4.0 * M_PI);
}

double require_resolved(const QConvention& conv) {
  if (!conv.resolved)
    throw DomainError("QConvention: sign not resolved");
  return conv.sign;
}

}  // namespace

bool half_integer_field(const ModelParams& params) {
  const double ab = std::abs(params.b);
  const double frac = ab - std::floor(ab);
  return std::abs(frac - 0.5) < 1e-12;
}

double q_from_t(double t, const ModelParams& params, const QConvention& conv) {
  return require_resolved(conv) * raw_bracket(t, params);
}

double q_closed_form(double zeta, const ModelParams& params,
                     const QConvention& conv) {
  if (zeta >= threshold(params))
    throw SpectrumError("q_closed_form: zeta on the continuous spectrum");
  try {
    return q_from_t(t_of_zeta(zeta, params), params, conv);
  } catch (const PoleArgument&) {
    throw SpectrumError("q_closed_form: zeta at a Landau level");
  }
}

Cplx q_closed_form(Cplx zeta, const ModelParams& params,
                   const QConvention& conv) {
  const double sign = require_resolved(conv);
  const Cplx t = t_of_zeta(zeta, params);
  return sign *
         (sf::digamma(t + params.b) + sf::digamma(t - params.b) +
          2.0 * sf::kEulerGamma - 2.0 * std::log(2.0 * params.a)) /
         (4.0 * M_PI);
}

double q_derivative_from_t(double t, const ModelParams& params,
                           const QConvention& conv) {
  const double sign = require_resolved(conv);
  const double s = t - 0.5;  // sqrt(b^2 - a^2 zeta)
  if (!(s > 0.0))
    throw SpectrumError("q_derivative: argument on or beyond the threshold");
  const double dt_dzeta = -params.a * params.a / (2.0 * s);
  return sign *
         (sf::trigamma(t + params.b) + sf::trigamma(t - params.b)) /
         (4.0 * M_PI) * dt_dzeta;
}

double q_derivative(double zeta, const ModelParams& params,
                    const QConvention& conv) {
  return q_derivative_from_t(t_of_zeta(zeta, params), params, conv);
}

double q_threshold_limit(const ModelParams& params, const QConvention& conv) {
  const double sign = require_resolved(conv);
  if (half_integer_field(params)) {
    // psi(1/2 - |b|) sits on a pole; Q -> sign * (-inf) = +inf under the
    // resolved convention.
    return sign < 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return sign * raw_bracket(0.5, params);
}

double q_oracle_regularized(double zeta, const Point& z,
                            const ModelParams& params) {
  require_upper_half_plane(z);
  const auto levels = landau_levels(params);
  const double first = levels.empty() ? threshold(params) : levels[0].second;
  if (!(zeta < first))
    throw DomainError("q_oracle_regularized: zeta must lie below the "
                      "discrete spectrum");

  // Vertical separations d_j = 1e-2 * 2^-j; G0 + (1/2pi) ln d behaves as
  // Q + c1 d^2 ln d + c2 d^2 + O(d^4 ln d), so fit the three-term model on
  // the last three separations.
  constexpr int kCount = 7;
  double d[kCount], val[kCount];
  for (int j = 0; j < kCount; ++j) {
    d[j] = 1e-2 * std::pow(2.0, -j);
    const Point zp{z.x, z.y * std::exp(d[j] / params.a)};
    const double g = green0(z, zp, zeta, params).real();
    val[j] = g + std::log(d[j]) / (2.0 * M_PI);
    if (!std::isfinite(val[j]))
      throw NonConvergence("q_oracle_regularized: kernel evaluation failed");
  }
  // Solve val = Q + c1 d^2 ln d + c2 d^2 for the smallest three d.
  const int i0 = kCount - 3;
  double A[3][4];
  for (int r = 0; r < 3; ++r) {
    const double dj = d[i0 + r];
    A[r][0] = 1.0;
    A[r][1] = dj * dj * std::log(dj);
    A[r][2] = dj * dj;
    A[r][3] = val[i0 + r];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(A[piv][k], A[col][k]);
    if (A[col][col] == 0.0)
      throw NonConvergence("q_oracle_regularized: extrapolation failed");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
    }
  }
  return A[0][3] / A[0][0];
}

bool special_interval_solvable(double alpha, const ModelParams& params,
                               const QConvention& conv) {
  if (half_integer_field(params)) return true;
  return alpha < q_threshold_limit(params, conv);
}

QConvention QConvention::standard() {
  QConvention conv;
  conv.sign = -1.0;
  conv.resolved = true;
  return conv;
}

QConvention QConvention::resolve(const ModelParams& params) {
  params.validate();
  const auto levels = landau_levels(params);
  const double first = levels.empty() ? threshold(params) : levels[0].second;
  const double scale = std::max(1.0, std::abs(first));
  const double z1 = first - 4.0 * scale;
  const double z2 = first - 2.0 * scale;
  const Point site{0.0, 1.0};

  const double o1 = q_oracle_regularized(z1, site, params);
  const double o2 = q_oracle_regularized(z2, site, params);
  const double r1 = raw_bracket(t_of_zeta(z1, params), params);
  const double r2 = raw_bracket(t_of_zeta(z2, params), params);

  QConvention conv;
  conv.sign = ((o2 - o1) * (r2 - r1) > 0.0) ? 1.0 : -1.0;
  conv.resolved = true;
  const double drift1 = o1 - conv.sign * r1;
  const double drift2 = o2 - conv.sign * r2;
  conv.oracle_drift = std::abs(drift2 - drift1);
  return conv;
}

double alpha_from_lambda(double lambda) {
  if (!(lambda > 0.0))
    throw DomainError("alpha_from_lambda: lambda must be positive");
  return std::log(lambda) / (2.0 * M_PI);
}

double lambda_from_alpha(double alpha) { return std::exp(2.0 * M_PI * alpha); }

}  // namespace hypmag
