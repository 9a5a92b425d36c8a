#pragma once

#include <optional>
#include <vector>

#include "hypmag/krein.hpp"
#include "hypmag/numerics.hpp"

namespace hypmag {

// One interval of the spectral-equation family: regular intervals end at a
// Landau level, the single special interval ends at the threshold b^2/a^2.
struct SpectralInterval {
  enum class Kind { Regular, Special };
  Kind kind;
  double lo;  // E0_{k-1}, or -inf for the leftmost interval
  double hi;  // E0_k (Regular) or b^2/a^2 (Special)
  int index;  // k, labelling by the right endpoint
};

// A solved bound state of the point-perturbed operator.
struct BoundState {
  int k;
  double energy;
  double c_k;  // normalization, [dQ/dzeta]^{-1/2} at the energy
  Point w;
  double alpha;
  ModelParams params;
};

std::vector<SpectralInterval> intervals(const ModelParams& params);

// Unique root of Q(zeta) = alpha in a regular interval; the special
// interval returns nullopt when unsolvable for this alpha.
std::optional<double> solve_level(const SpectralInterval& interval,
                                  double alpha, const ModelParams& params,
                                  const QConvention& conv);

// All bound states (one per solvable interval), energies increasing and
// independent of the perturbation site w.
std::vector<BoundState> bound_states(double alpha, const Point& w,
                                     const ModelParams& params,
                                     const QConvention& conv);

// Psi_k(z; w, alpha) = c_k G0(z, w; E_k).
Cplx eigenfunction(const BoundState& state, const Point& z);

// Factorization Psi = (gauge phase) x (real radial profile in sigma(z,w)).
struct EigenfunctionParts {
  Cplx phase;
  double radial;
  double imag_residue;  // |Im(Psi / phase)|, ideally 0
};
EigenfunctionParts eigenfunction_parts(const BoundState& state,
                                       const Point& z);

// Quadrature of \int |Psi|^2 dmu_a by polar coordinates about w; the target
// value is 1.
double norm_check(const BoundState& state, const QuadratureSpec& spec = {});

}  // namespace hypmag
