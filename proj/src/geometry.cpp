#include "hypmag/geometry.hpp"

#include <cmath>
#include <complex>

#include "hypmag/numerics.hpp"

namespace hypmag {

double geodesic_distance(const Point& z, const Point& zp, double a) {
  require_upper_half_plane(z);
  require_upper_half_plane(zp);
  const double dx = z.x - zp.x;
  const double dy = z.y - zp.y;
  const double arg = 1.0 + (dx * dx + dy * dy) / (2.0 * z.y * zp.y);
  return a * std::acosh(std::max(1.0, arg));
}

double sigma(const Point& z, const Point& zp) {
  require_upper_half_plane(z);
  require_upper_half_plane(zp);
  const double dx = z.x - zp.x;
  const double sy = z.y + zp.y;
  return (dx * dx + sy * sy) / (4.0 * z.y * zp.y);
}

Point polar_to_point(const Point& center, double r, double phi, double a) {
  require_upper_half_plane(center);
  if (r < 0.0) throw DomainError("polar_to_point: negative radius");
  (void)a;  // the unit-model construction is curvature-independent
  // Disc-model ray about i, mapped by the Cayley transform, then moved to
  // the requested center by the isometry z -> v z + u.
  const std::complex<double> zeta =
      std::tanh(0.5 * r) * std::complex<double>(std::cos(phi), std::sin(phi));
  const std::complex<double> unit =
      std::complex<double>(0.0, 1.0) * (1.0 + zeta) / (1.0 - zeta);
  return Point{center.y * unit.real() + center.x, center.y * unit.imag()};
}

double disc_area(double r, double a) {
  if (r < 0.0) throw DomainError("disc_area: negative radius");
  return 2.0 * M_PI * a * a * (std::cosh(r / a) - 1.0);
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct EuclideanCircle {
  double cx, cy, radius;
};

EuclideanCircle realize(const GeodesicCircle& c, double a) {
  // Geodesic circles are Euclidean circles with the center shifted upward.
  const double rho = c.hyper_radius / a;
  return {c.center.x, c.center.y * std::cosh(rho),
          c.center.y * std::sinh(rho)};
}

// Exact line integral of dx/y along a straight coordinate segment.
double segment_dx_over_y(const Point& p, const Point& q) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  if (std::abs(dy) < 1e-12 * (p.y + q.y)) return 2.0 * dx / (p.y + q.y);
  return dx / dy * std::log(q.y / p.y);
}

}  // namespace

Point LoopSpec::at(double t) const {
  return std::visit(
      [&](const auto& s) -> Point {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GeodesicCircle>) {
          const auto e = realize(s, a);
          return {e.cx + e.radius * std::cos(kTwoPi * t),
                  e.cy + e.radius * std::sin(kTwoPi * t)};
        } else if constexpr (std::is_same_v<S, CoordinateEllipse>) {
          return {s.center.x + s.semi_u * std::cos(kTwoPi * t),
                  s.center.y + s.semi_v * std::sin(kTwoPi * t)};
        } else {
          const auto& pts = s.points;
          const int n = static_cast<int>(pts.size());
          double u = t - std::floor(t);
          int i = static_cast<int>(u * n);
          if (i >= n) i = n - 1;
          const double local = u * n - i;
          const Point& p0 = pts[i];
          const Point& p1 = pts[(i + 1) % n];
          return {p0.x + local * (p1.x - p0.x), p0.y + local * (p1.y - p0.y)};
        }
      },
      shape);
}

Point LoopSpec::tangent(double t) const {
  return std::visit(
      [&](const auto& s) -> Point {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GeodesicCircle>) {
          const auto e = realize(s, a);
          return {-kTwoPi * e.radius * std::sin(kTwoPi * t),
                  kTwoPi * e.radius * std::cos(kTwoPi * t)};
        } else if constexpr (std::is_same_v<S, CoordinateEllipse>) {
          return {-kTwoPi * s.semi_u * std::sin(kTwoPi * t),
                  kTwoPi * s.semi_v * std::cos(kTwoPi * t)};
        } else {
          const auto& pts = s.points;
          const int n = static_cast<int>(pts.size());
          double u = t - std::floor(t);
          int i = static_cast<int>(u * n);
          if (i >= n) i = n - 1;
          const Point& p0 = pts[i];
          const Point& p1 = pts[(i + 1) % n];
          return {n * (p1.x - p0.x), n * (p1.y - p0.y)};
        }
      },
      shape);
}

double LoopSpec::coordinate_area() const {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GeodesicCircle>) {
          const auto e = realize(s, a);
          return M_PI * e.radius * e.radius;
        } else if constexpr (std::is_same_v<S, CoordinateEllipse>) {
          return M_PI * s.semi_u * s.semi_v;
        } else {
          const auto& pts = s.points;
          const int n = static_cast<int>(pts.size());
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            const Point& p0 = pts[i];
            const Point& p1 = pts[(i + 1) % n];
            acc += p0.x * p1.y - p1.x * p0.y;
          }
          return 0.5 * acc;
        }
      },
      shape);
}

void LoopSpec::validate() const {
  if (samples < 16) throw DomainError("LoopSpec: samples must be >= 16");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GeodesicCircle>) {
          require_upper_half_plane(s.center);
          if (!(s.hyper_radius > 0.0))
            throw DomainError("GeodesicCircle: radius must be positive");
        } else if constexpr (std::is_same_v<S, CoordinateEllipse>) {
          require_upper_half_plane(s.center);
          if (!(s.semi_u > 0.0) || !(s.semi_v > 0.0))
            throw DomainError("CoordinateEllipse: semi-axes must be positive");
          if (!(s.center.y - s.semi_v > 0.0))
            throw DomainError("CoordinateEllipse: loop leaves the half-plane");
        } else {
          if (s.points.size() < 3)
            throw DomainError("Polyline: need at least 3 vertices");
          for (const auto& p : s.points) require_upper_half_plane(p);
        }
      },
      shape);
}

double flux_through_loop(const LoopSpec& loop, double B, double a) {
  loop.validate();
  if (std::abs(loop.coordinate_area()) < 1e-12)
    throw DegenerateLoop("flux_through_loop: enclosed area below tolerance");
  if (B == 0.0) return 0.0;

  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Polyline>) {
          const auto& pts = s.points;
          const int n = static_cast<int>(pts.size());
          double acc = 0.0;
          for (int i = 0; i < n; ++i)
            acc += segment_dx_over_y(pts[i], pts[(i + 1) % n]);
          return B * a * a * acc;
        } else {
          QuadratureSpec tight;
          tight.rel_tol = 1e-12;
          const double line = integrate_1d(
              [&](double t) { return loop.tangent(t).x / loop.at(t).y; }, 0.0,
              1.0, tight);
          return B * a * a * line;
        }
      },
      loop.shape);
}

}  // namespace hypmag
