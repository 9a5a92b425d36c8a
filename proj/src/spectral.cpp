#include "hypmag/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypmag {

std::vector<SpectralInterval> intervals(const ModelParams& params) {
  const auto levels = landau_levels(params);
  const double top = threshold(params);
  std::vector<SpectralInterval> out;
  constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
  if (levels.empty()) {
    out.push_back({SpectralInterval::Kind::Special, kMinusInf, top, 0});
    return out;
  }
  out.push_back(
      {SpectralInterval::Kind::Regular, kMinusInf, levels[0].second, 0});
  for (std::size_t n = 1; n < levels.size(); ++n)
    out.push_back({SpectralInterval::Kind::Regular, levels[n - 1].second,
                   levels[n].second, static_cast<int>(n)});
  out.push_back({SpectralInterval::Kind::Special, levels.back().second, top,
                 static_cast<int>(levels.size())});
  return out;
}

namespace {

constexpr double kRootTol = 1e-13;

struct Solved {
  double zeta;
  double t;
};

std::optional<Solved> solve_regular(const SpectralInterval& iv, double alpha,
                                    const ModelParams& params,
                                    const QConvention& conv) {
  auto f = [&](double zeta) {
    return q_closed_form(zeta, params, conv) - alpha;
  };
  const bool lo_finite = std::isfinite(iv.lo);
  const double width = lo_finite ? iv.hi - iv.lo : std::max(1.0, std::abs(iv.hi));

  // Right endpoint: Q -> +inf at the Landau level, so f > 0 close enough.
  double delta = 1e-10 * width;
  double zr = iv.hi - delta;
  while (!(f(zr) > 0.0)) {
    delta *= 0.1;
    if (delta < 1e-18 * width)
      throw NonConvergence("solve_level: no positive value near upper pole");
    zr = iv.hi - delta;
  }

  double zl;
  if (lo_finite) {
    double dl = 1e-10 * width;
    zl = iv.lo + dl;
    while (!(f(zl) < 0.0)) {
      dl *= 0.1;
      if (dl < 1e-18 * width)
        throw NonConvergence("solve_level: no negative value near lower pole");
      zl = iv.lo + dl;
    }
  } else {
    double reach = width;
    zl = iv.hi - reach;
    int guard = 0;
    while (!(f(zl) < 0.0)) {
      reach *= 2.0;
      zl = iv.hi - reach;
      if (++guard > 200)
        throw NonConvergence("solve_level: Q does not fall below alpha");
    }
  }

  const double root = find_root(f, RootBracket::from(f, zl, zr), kRootTol);
  return Solved{root, t_of_zeta(root, params)};
}

std::optional<Solved> solve_special(const SpectralInterval& iv, double alpha,
                                    const ModelParams& params,
                                    const QConvention& conv) {
  if (!special_interval_solvable(alpha, params, conv)) return std::nullopt;

  // Work in s = t - 1/2 = sqrt(b^2 - a^2 zeta); the threshold is s = 0 and
  // Q is decreasing in s.
  auto g = [&](double s) { return q_from_t(0.5 + s, params, conv) - alpha; };
  const bool lo_finite = std::isfinite(iv.lo);
  const double s_lo =
      lo_finite ? std::sqrt(params.b * params.b -
                            params.a * params.a * iv.lo)
                : std::numeric_limits<double>::infinity();

  double s_small = lo_finite ? std::min(1e-2, 0.5 * s_lo) : 1e-2;
  while (!(g(s_small) > 0.0)) {
    s_small *= 0.25;
    if (s_small < 1e-290)
      throw NonConvergence("solve_level: special interval bracketing failed");
  }

  double s_big;
  if (lo_finite) {
    double delta = 1e-10 * s_lo;
    s_big = s_lo - delta;
    while (!(g(s_big) < 0.0)) {
      delta *= 0.1;
      if (delta < 1e-18 * s_lo)
        throw NonConvergence("solve_level: no sign change near lower pole");
      s_big = s_lo - delta;
    }
  } else {
    s_big = std::max(1.0, 2.0 * s_small);
    int guard = 0;
    while (!(g(s_big) < 0.0)) {
      s_big *= 2.0;
      if (++guard > 200)
        throw NonConvergence("solve_level: Q does not fall below alpha");
    }
  }

  const double s_root =
      find_root(g, RootBracket::from(g, s_small, s_big), kRootTol);
  const double zeta =
      (params.b * params.b - s_root * s_root) / (params.a * params.a);
  return Solved{zeta, 0.5 + s_root};
}

}  // namespace

std::optional<double> solve_level(const SpectralInterval& interval,
                                  double alpha, const ModelParams& params,
                                  const QConvention& conv) {
  const auto solved = interval.kind == SpectralInterval::Kind::Regular
                          ? solve_regular(interval, alpha, params, conv)
                          : solve_special(interval, alpha, params, conv);
  if (!solved) return std::nullopt;
  return solved->zeta;
}

std::vector<BoundState> bound_states(double alpha, const Point& w,
                                     const ModelParams& params,
                                     const QConvention& conv) {
  require_upper_half_plane(w);
  std::vector<BoundState> out;
  for (const auto& iv : intervals(params)) {
    const auto solved = iv.kind == SpectralInterval::Kind::Regular
                            ? solve_regular(iv, alpha, params, conv)
                            : solve_special(iv, alpha, params, conv);
    if (!solved) continue;
    const double dq = q_derivative_from_t(solved->t, params, conv);
    out.push_back(BoundState{iv.index, solved->zeta, 1.0 / std::sqrt(dq), w,
                             alpha, params});
  }
  return out;
}

Cplx eigenfunction(const BoundState& state, const Point& z) {
  return state.c_k * green0(z, state.w, state.energy, state.params);
}

EigenfunctionParts eigenfunction_parts(const BoundState& state,
                                       const Point& z) {
  const Cplx psi = eigenfunction(state, z);
  const Cplx phase = phase_factor(z, state.w, state.params.b);
  const Cplx reduced = psi / phase;
  return {phase, reduced.real(), std::abs(reduced.imag())};
}

double norm_check(const BoundState& state, const QuadratureSpec& spec) {
  // Radius below which sigma - 1 approaches the diagonal guard of green0;
  // the integrand there is ~ r ln^2 r, so freezing it is harmless.
  constexpr double kRadialFloor = 4e-6;
  const double a2 = state.params.a * state.params.a;
  auto integrand = [&](double r, double phi) {
    const Point z = polar_to_point(state.w, std::max(r, kRadialFloor), phi,
                                   state.params.a);
    const double amp = std::abs(eigenfunction(state, z));
    return amp * amp;
  };
  return a2 * integrate_polar(integrand, spec).value;
}

}  // namespace hypmag
