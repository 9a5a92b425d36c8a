#pragma once

#include "hypmag/spectral.hpp"

namespace hypmag {

// The geometric connection -i <Psi | grad_w Psi> at a perturbation site w;
// both components are real for the smooth bound-state family.
struct BerryConnection {
  double u_component;
  double v_component;
  Point w;
  int level;
  double imag_residue;  // worst relative imaginary leftover of i<Psi|dPsi>
};

struct BerryPhaseReport {
  double numeric_phase = std::numeric_limits<double>::quiet_NaN();
  double analytic_phase = 0.0;
  double flux = 0.0;
  double flux_quanta = 0.0;  // flux / (2 pi)
  int level = -1;
  double alpha = 0.0;
  int samples_used = 0;
  bool degenerate = false;
};

// Quadrature of -i<Psi|d_u Psi> and -i<Psi|d_v Psi> with the site
// derivative taken by Richardson central differences at step h_rel * v.
// The differencing caps the attainable relative accuracy near 1e-9;
// tighter rel_tol requests are clamped to that floor.
BerryConnection berry_connection_numeric(const BoundState& state,
                                         double h_rel = 1e-4,
                                         const QuadratureSpec& spec = {});

// Closed form (b/v, 0) = (B a^2 / v, 0); independent of alpha and level.
BerryConnection berry_connection_analytic(const Point& w,
                                          const ModelParams& params);

// Line integral of (b/v) du along the loop, plus the flux bookkeeping
// (flux quantum = 2 pi in these units).
BerryPhaseReport berry_phase_analytic(const LoopSpec& loop,
                                      const ModelParams& params);

// Line integral of the numerically computed connection along the loop,
// trapezoid over loop samples (doubled until the phase moves < phase_tol
// when refine = true).
BerryPhaseReport berry_phase_numeric(const LoopSpec& loop,
                                     const BoundState& state,
                                     double h_rel = 1e-4,
                                     const QuadratureSpec& spec = {},
                                     bool refine = true,
                                     double phase_tol = 1e-6);

struct AlphaIndependenceReport {
  std::vector<double> alphas;
  std::vector<double> phases;
  double max_pairwise_deviation = 0.0;
  double analytic_phase = 0.0;
};

// Numeric phases across a coupling sweep at a fixed loop and level; the
// phases must agree (the connection does not see alpha or k).
AlphaIndependenceReport alpha_independence_check(
    const LoopSpec& loop, const std::vector<double>& alphas, int level,
    const ModelParams& params, const QConvention& conv,
    const QuadratureSpec& spec = {});

}  // namespace hypmag
