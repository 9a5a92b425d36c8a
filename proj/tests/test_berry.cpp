#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypmag/berry.hpp"

using namespace hypmag;

namespace {
const QConvention kConv = QConvention::standard();

QuadratureSpec light_spec() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-12;
  return spec;
}

BoundState ground_state(double alpha, const Point& w, const ModelParams& p) {
  const auto states = bound_states(alpha, w, p, kConv);
  REQUIRE(!states.empty());
  return states[0];
}
}  // namespace

TEST_CASE("berry_connection_analytic: closed form (b/v, 0)") {
  const ModelParams p{1.0, 2.0, 1.0};
  const auto conn = berry_connection_analytic({0.7, 1.6}, p);
  CHECK(conn.u_component == doctest::Approx(2.0 / 1.6).epsilon(1e-14));
  CHECK(conn.v_component == doctest::Approx(0.0));
  // Scales like B a^2 / v.
  const ModelParams p2{2.0, 3.0, 1.0};
  CHECK(berry_connection_analytic({0.0, 0.5}, p2).u_component ==
        doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("berry_connection_numeric matches the closed form") {
  const ModelParams p{1.0, 1.0, 1.0};
  const auto spec = light_spec();
  for (const Point w : {Point{0.0, 1.0}, Point{0.5, 2.0}}) {
    const auto state = ground_state(0.0, w, p);
    const auto conn = berry_connection_numeric(state, 1e-4, spec);
    const auto exact = berry_connection_analytic(w, p);
    CHECK(conn.u_component ==
          doctest::Approx(exact.u_component).epsilon(1e-5));
    CHECK(std::abs(conn.v_component) < 1e-5 * std::abs(exact.u_component));
    CHECK(conn.imag_residue < 1e-4);
  }
}

TEST_CASE("berry_connection_numeric is independent of alpha and level") {
  const ModelParams p{1.0, 2.0, 1.0};
  const Point w{0.0, 1.3};
  const auto spec = light_spec();
  const auto s_a = ground_state(-0.1, w, p);
  const auto s_b = ground_state(0.15, w, p);
  const auto states = bound_states(-0.1, w, p, kConv);
  REQUIRE(states.size() >= 2);
  const double u_a = berry_connection_numeric(s_a, 1e-4, spec).u_component;
  const double u_b = berry_connection_numeric(s_b, 1e-4, spec).u_component;
  const double u_k1 =
      berry_connection_numeric(states[1], 1e-4, spec).u_component;
  CHECK(u_a == doctest::Approx(u_b).epsilon(1e-5));
  CHECK(u_a == doctest::Approx(u_k1).epsilon(1e-4));
}

TEST_CASE("berry_phase_analytic: geodesic circle flux 2 pi b (cosh rho - 1)") {
  const ModelParams p{1.0, 1.0, 1.0};
  LoopSpec loop{GeodesicCircle{{0.0, 2.0}, 1.0}, 64, 1.0};
  const auto rep = berry_phase_analytic(loop, p);
  CHECK(rep.analytic_phase ==
        doctest::Approx(2.0 * M_PI * (std::cosh(1.0) - 1.0)).epsilon(1e-10));
  CHECK(rep.flux == doctest::Approx(rep.analytic_phase));
  CHECK(rep.flux_quanta ==
        doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-10));
  CHECK(!rep.degenerate);
  // Flux is invariant under horizontal translation of the loop.
  LoopSpec shifted{GeodesicCircle{{5.0, 2.0}, 1.0}, 64, 1.0};
  CHECK(berry_phase_analytic(shifted, p).flux ==
        doctest::Approx(rep.flux).epsilon(1e-12));
}

TEST_CASE("berry_phase_numeric reproduces the flux on a small loop") {
  const ModelParams p{1.0, 1.0, 1.0};
  const Point w0{0.0, 1.5};
  LoopSpec loop{GeodesicCircle{{w0.x, w0.y}, 0.35}, 16, 1.0};
  const auto state = ground_state(0.0, w0, p);
  const auto rep =
      berry_phase_numeric(loop, state, 1e-4, light_spec(), /*refine=*/false);
  CHECK(!rep.degenerate);
  CHECK(rep.numeric_phase ==
        doctest::Approx(rep.analytic_phase).epsilon(2e-4));
  CHECK(rep.samples_used == 16);
}

TEST_CASE("degenerate loop short-circuits to a flagged zero report") {
  const ModelParams p{1.0, 1.0, 1.0};
  LoopSpec flat{Polyline{{{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}}}, 16, 1.0};
  const auto rep = berry_phase_analytic(flat, p);
  CHECK(rep.degenerate);
  CHECK(rep.flux == 0.0);
  CHECK(rep.numeric_phase == 0.0);
}
