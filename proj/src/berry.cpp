#include "hypmag/berry.hpp"

#include <cmath>

namespace hypmag {

namespace {

constexpr double kRadialFloor = 4e-6;

// Evaluation of Psi with a tiny vertical nudge if a quadrature node happens
// to collide with a shifted perturbation site.
Cplx safe_psi(const BoundState& state, Point z, const Point& site) {
  try {
    return state.c_k * green0(z, site, state.energy, state.params);
  } catch (const DiagonalSingularity&) {
    // Push the node horizontally past the diagonal tolerance (sigma - 1
    // below 1e-12 means the separation is under ~2e-6 * y).
    const double eps = 4e-6 * site.y;
    z.x = site.x + ((z.x >= site.x) ? eps : -eps);
    return state.c_k * green0(z, site, state.energy, state.params);
  }
}

// i <Psi | d Psi> along one coordinate direction of the site.  The product
// conj(Psi) * (differenced Psi) has structure at the differencing scale h
// around the shifted sites, so the radial variable is stretched as
// r = h sinh(tau): unit tau-panels then resolve both the h-scale core and
// the exponential tail.
Cplx connection_component(const BoundState& state, bool along_u, double h,
                          const QuadratureSpec& spec) {
  const Point w = state.w;
  const double a2 = state.params.a * state.params.a;

  // <Psi | d Psi> has natural magnitude ~ b/v, and the component transverse
  // to the field vanishes by angular cancellation.  Anchor the absolute
  // tolerance to that scale: the residue of the vanishing component sits on
  // the kernel's roundoff floor (amplified by 1/h in the differencing) and
  // cannot be resolved to an arbitrary absolute accuracy.
  // The differencing amplifies kernel evaluation noise by 1/h, which caps
  // the attainable relative accuracy near 1e-9; tighter requests only stall
  // the radial refinement.
  QuadratureSpec eff = spec;
  eff.rel_tol = std::max(spec.rel_tol, 1e-9);
  // The a^2 measure factor is applied after the quadrature, so the raw
  // integral scales like (b/v) / a^2.
  eff.abs_tol = std::max(
      spec.abs_tol, eff.rel_tol * (std::abs(state.params.b) + 1.0) / (w.y * a2));

  auto integrand = [&](double tau, double phi) -> Cplx {
    const double r = h * std::sinh(std::min(tau, 50.0));
    // |Psi|^2 sinh(r) falls off exponentially; beyond r ~ 30 the contribution
    // is dead and polar_to_point loses the ordinate to rounding.
    if (r > 30.0) return Cplx{};
    const Point z =
        polar_to_point(w, std::max(r, kRadialFloor), phi, state.params.a);
    auto shifted = [&](double s) {
      const Point site = along_u ? Point{w.x + s, w.y} : Point{w.x, w.y + s};
      return safe_psi(state, z, site);
    };
    const Cplx dpsi = central_diff(shifted, 0.0, h);
    // Measure transfer: sinh(r) dr = sinh(r) h cosh(tau) dtau, divided by
    // the sinh(tau) the polar integrator multiplies back in.
    const double jac = std::sinh(r) * h * std::cosh(tau) / std::sinh(tau);
    return std::conj(safe_psi(state, z, w)) * dpsi * jac;
  };

  const Cplx inner = a2 * integrate_polar_complex(integrand, eff).value;
  // A = -i <Psi | d Psi>: the sign under which the loop integral of the
  // connection reproduces the (positive) enclosed flux.
  return Cplx(0.0, -1.0) * inner;
}

}  // namespace

BerryConnection berry_connection_numeric(const BoundState& state, double h_rel,
                                         const QuadratureSpec& spec) {
  require_upper_half_plane(state.w);
  const double h = h_rel * state.w.y;
  if (!(state.w.y - 2.0 * h > 0.0))
    throw DomainError("berry_connection_numeric: step leaves the half-plane");

  const Cplx vu = connection_component(state, true, h, spec);
  const Cplx vv = connection_component(state, false, h, spec);

  const double scale =
      std::max({std::abs(vu), std::abs(vv), 1e-300});
  BerryConnection out;
  out.u_component = vu.real();
  out.v_component = vv.real();
  out.w = state.w;
  out.level = state.k;
  out.imag_residue =
      std::max(std::abs(vu.imag()), std::abs(vv.imag())) / scale;
  return out;
}

BerryConnection berry_connection_analytic(const Point& w,
                                          const ModelParams& params) {
  require_upper_half_plane(w);
  params.validate();
  return {params.b / w.y, 0.0, w, -1, 0.0};
}

namespace {

BerryPhaseReport degenerate_report(const LoopSpec& loop) {
  BerryPhaseReport rep;
  rep.numeric_phase = 0.0;
  rep.analytic_phase = 0.0;
  rep.flux = 0.0;
  rep.flux_quanta = 0.0;
  rep.samples_used = loop.samples;
  rep.degenerate = true;
  return rep;
}

void fill_flux(BerryPhaseReport& rep, const LoopSpec& loop,
               const ModelParams& params) {
  // In these units the analytic connection 1-form is (b/v) du, which is
  // exactly the Landau-gauge potential; the loop integral equals the flux.
  rep.flux = flux_through_loop(loop, params.b / (params.a * params.a),
                               params.a);
  rep.analytic_phase = rep.flux;
  rep.flux_quanta = rep.flux / (2.0 * M_PI);
}

}  // namespace

BerryPhaseReport berry_phase_analytic(const LoopSpec& loop,
                                      const ModelParams& params) {
  loop.validate();
  params.validate();
  BerryPhaseReport rep;
  try {
    fill_flux(rep, loop, params);
  } catch (const DegenerateLoop&) {
    return degenerate_report(loop);
  }
  rep.numeric_phase = std::numeric_limits<double>::quiet_NaN();
  rep.samples_used = 0;
  return rep;
}

BerryPhaseReport berry_phase_numeric(const LoopSpec& loop,
                                     const BoundState& state, double h_rel,
                                     const QuadratureSpec& spec, bool refine,
                                     double phase_tol) {
  loop.validate();
  BerryPhaseReport rep;
  try {
    fill_flux(rep, loop, state.params);
  } catch (const DegenerateLoop&) {
    return degenerate_report(loop);
  }
  rep.level = state.k;
  rep.alpha = state.alpha;

  auto phase_at = [&](int n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = (j + 0.5) / n;
      BoundState moved = state;
      moved.w = loop.at(t);
      const auto conn = berry_connection_numeric(moved, h_rel, spec);
      const Point tan = loop.tangent(t);
      acc += conn.u_component * tan.x + conn.v_component * tan.y;
    }
    return acc / n;
  };

  int n = loop.samples;
  double phase = phase_at(n);
  if (refine) {
    for (int iter = 0; iter < 4; ++iter) {
      const double next = phase_at(2 * n);
      const bool done = std::abs(next - phase) < phase_tol;
      n *= 2;
      phase = next;
      if (done) break;
    }
  }
  rep.numeric_phase = phase;
  rep.samples_used = n;
  return rep;
}

AlphaIndependenceReport alpha_independence_check(
    const LoopSpec& loop, const std::vector<double>& alphas, int level,
    const ModelParams& params, const QConvention& conv,
    const QuadratureSpec& spec) {
  AlphaIndependenceReport rep;
  const Point seed = loop.at(0.0);
  for (double alpha : alphas) {
    const auto states = bound_states(alpha, seed, params, conv);
    const BoundState* match = nullptr;
    for (const auto& s : states)
      if (s.k == level) match = &s;
    if (!match)
      throw DomainError(
          "alpha_independence_check: level not solvable for some alpha");
    const auto phase_rep =
        berry_phase_numeric(loop, *match, 1e-4, spec, /*refine=*/false);
    rep.alphas.push_back(alpha);
    rep.phases.push_back(phase_rep.numeric_phase);
    rep.analytic_phase = phase_rep.analytic_phase;
  }
  for (std::size_t i = 0; i < rep.phases.size(); ++i)
    for (std::size_t j = i + 1; j < rep.phases.size(); ++j)
      rep.max_pairwise_deviation = std::max(
          rep.max_pairwise_deviation, std::abs(rep.phases[i] - rep.phases[j]));
  return rep;
}

}  // namespace hypmag
