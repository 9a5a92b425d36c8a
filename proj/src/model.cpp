#include "hypmag/model.hpp"

#include <cmath>

#include "hypmag/specialfn.hpp"

namespace hypmag {

namespace sf = specialfn;

std::vector<std::pair<int, double>> landau_levels(const ModelParams& params) {
  params.validate();
  std::vector<std::pair<int, double>> levels;
  const double ab = std::abs(params.b);
  const double a2 = params.a * params.a;
  for (int n = 0; n < ab - 0.5; ++n) {
    const double s = ab - n - 0.5;
    levels.emplace_back(n, (params.b * params.b - s * s) / a2);
  }
  return levels;
}

double threshold(const ModelParams& params) {
  params.validate();
  return params.b * params.b / (params.a * params.a);
}

Cplx t_of_zeta(Cplx zeta, const ModelParams& params) {
  params.validate();
  if (zeta.imag() == 0.0 && zeta.real() >= threshold(params))
    throw DomainError("t_of_zeta: zeta lies on the spectral cut");
  const Cplx w = params.b * params.b - params.a * params.a * zeta;
  return 0.5 + std::sqrt(w);  // principal sqrt, Re >= 0
}

double t_of_zeta(double zeta, const ModelParams& params) {
  params.validate();
  if (zeta >= threshold(params))
    throw DomainError("t_of_zeta: zeta lies on the spectral cut");
  return 0.5 + std::sqrt(params.b * params.b - params.a * params.a * zeta);
}

Cplx phase_factor(const Point& z, const Point& w, double b) {
  require_upper_half_plane(z);
  require_upper_half_plane(w);
  // Base -(z - conj(w)) / (conj(z) - w) = -xi / conj(xi) with xi = z - conj(w)
  // in the upper half-plane, so the base is exp(i theta) with the principal
  // argument theta = 2 arg(xi) - pi in (-pi, pi).
  const double theta =
      2.0 * std::atan2(z.y + w.y, z.x - w.x) - M_PI;
  return std::exp(Cplx(0.0, b * theta));
}

namespace {

constexpr double kDiagonalTol = 1e-12;

bool near_nonpositive_integer_real(double v, double tol = 1e-12) {
  const double r = std::round(v);
  return r <= 0.0 && std::abs(v - r) <= tol;
}

Cplx green0_impl(const Point& z, const Point& zp, Cplx t, double b) {
  const double sig = sigma(z, zp);
  if (sig - 1.0 < kDiagonalTol)
    throw DiagonalSingularity("green0: evaluation on the diagonal");

  const Cplx p = t + b;
  const Cplx q = t - b;
  if (t.imag() == 0.0 &&
      (near_nonpositive_integer_real(p.real()) ||
       near_nonpositive_integer_real(q.real())))
    throw SpectrumError("green0: zeta at a Landau level");

  // The kernel decays like exp(-(Re t - 1/2) d/a); below exp(-690) it is
  // far under any quantity of interest, and for deeply bound energies the
  // hypergeometric series' largest intermediate term would overflow there,
  // so skip the evaluation entirely.
  const double dist = 2.0 * std::acosh(std::sqrt(sig));  // d / a
  if ((t.real() - 0.5) * dist > 690.0) return Cplx{};

  // Assemble the radial part in log space: for large Re t the Gamma ratio
  // underflows while the hypergeometric factor overflows, even where the
  // kernel itself is representable.
  const Cplx ln_f =
      sf::hyp2f1_log_case_ln(sf::Hyp2F1Params::make(p, q, 1.0 / sig));
  const Cplx ln_radial = sf::ln_gamma(p) + sf::ln_gamma(q) -
                         sf::ln_gamma(2.0 * t) - t * std::log(sig) + ln_f;
  return (0.25 / M_PI) * phase_factor(z, zp, b) * std::exp(ln_radial);
}

}  // namespace

Cplx green0(const Point& z, const Point& zp, Cplx zeta,
            const ModelParams& params) {
  return green0_impl(z, zp, t_of_zeta(zeta, params), params.b);
}

Cplx green0(const Point& z, const Point& zp, double zeta,
            const ModelParams& params) {
  return green0_impl(z, zp, Cplx(t_of_zeta(zeta, params), 0.0), params.b);
}

Cplx apply_H0_fd(const std::function<Cplx(Point)>& f, const Point& z, double h,
                 const ModelParams& params) {
  params.validate();
  require_upper_half_plane(z);
  if (!(z.y - h > 0.0))
    throw DomainError("apply_H0_fd: stencil leaves the half-plane");

  const Cplx fc = f(z);
  const Cplx fxp = f({z.x + h, z.y});
  const Cplx fxm = f({z.x - h, z.y});
  const Cplx fyp = f({z.x, z.y + h});
  const Cplx fym = f({z.x, z.y - h});

  const double h2 = h * h;
  const Cplx lap = (fxp + fxm + fyp + fym - 4.0 * fc) / h2;
  const Cplx fx = (fxp - fxm) / (2.0 * h);

  const double a2 = params.a * params.a;
  const double y2 = z.y * z.y;
  // The first-order term carries -2iby: this is the sign under which the
  // closed-form kernel (with its (-(z - conj(z'))/(conj(z) - z'))^b phase)
  // is actually the resolvent, confirmed by the O(h^2) residual test.
  return (-y2 * lap - Cplx(0.0, 2.0 * params.b * z.y) * fx +
          params.b * params.b * fc) /
             a2 -
         (params.nu / (4.0 * a2)) * fc;
}

}  // namespace hypmag
