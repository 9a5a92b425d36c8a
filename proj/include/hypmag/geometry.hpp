#pragma once

#include <variant>
#include <vector>

#include "hypmag/errors.hpp"

namespace hypmag {

// Location in the Poincare half-plane model; y > 0.
struct Point {
  double x;
  double y;
};

inline void require_upper_half_plane(const Point& z) {
  if (!(z.y > 0.0))
    throw DomainError("Point: ordinate must be positive");
}

// Geodesic distance d_a(z, z') = a arcosh[1 + |z-z'|^2 / 2yy'].
double geodesic_distance(const Point& z, const Point& zp, double a);

// sigma(z,z') = cosh^2(d_a/2a) = (|x-x'|^2 + |y+y'|^2) / 4yy'; independent
// of the curvature radius, >= 1 with equality on the diagonal.
double sigma(const Point& z, const Point& zp);

// Geodesic polar coordinates about `center`.  r is the unit-model radius
// (d_a(center, result) = a r); phi = 0 points vertically up.  Matches the
// measure convention of integrate_polar: d mu_1 = sinh r dr dphi.
Point polar_to_point(const Point& center, double r, double phi, double a);

// Area of a geodesic disc of radius r (a length in the a-metric):
// 2 pi a^2 (cosh(r/a) - 1).
double disc_area(double r, double a);

struct GeodesicCircle {
  Point center;        // hyperbolic center
  double hyper_radius; // length in the a-metric
};

struct CoordinateEllipse {
  Point center;
  double semi_u;
  double semi_v;
};

struct Polyline {
  std::vector<Point> points;  // closed implicitly (last joins first)
};

// Closed, positively oriented (counterclockwise) parametrized loop in the
// half-plane, with analytic tangents where available.
struct LoopSpec {
  std::variant<GeodesicCircle, CoordinateEllipse, Polyline> shape;
  int samples = 256;
  double a = 1.0;  // curvature radius used to realize GeodesicCircle

  Point at(double t) const;       // t in [0, 1)
  Point tangent(double t) const;  // d(position)/dt
  // Signed coordinate (u,v) area enclosed, by the shoelace integral.
  double coordinate_area() const;
  void validate() const;
};

// Flux of the field 2-form through the loop interior, computed as the line
// integral of the Landau-gauge potential: B a^2 \oint dx / y.
double flux_through_loop(const LoopSpec& loop, double B, double a);

}  // namespace hypmag
