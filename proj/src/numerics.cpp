#include "hypmag/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hypmag {

namespace {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK values, abscissae for the
// interval [-1, 1]).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct PanelEstimate {
  T integral;
  double error;
};

template <typename T>
PanelEstimate<T> gk15(const std::function<T(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(center);
  T result_gauss = kWg[3] * fc;
  T result_kronrod = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    T f1 = f(center - dx);
    T f2 = f(center + dx);
    result_kronrod += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }
  PanelEstimate<T> out;
  out.integral = result_kronrod * half;
  double err = std::abs(result_kronrod - result_gauss) * std::abs(half);
  // QUADPACK-style sharpening of the raw difference estimate.
  double scale = resabs * std::abs(half);
  if (scale > 0.0 && err > 0.0) {
    double r = std::pow(200.0 * err / scale, 1.5);
    err = scale * std::min(1.0, r);
  }
  out.error = std::max(err, std::numeric_limits<double>::epsilon() * scale);
  return out;
}

template <typename T>
T adaptive_1d(const std::function<T(double)>& f, double lo, double hi,
              const QuadratureSpec& spec) {
  if (!(lo < hi)) throw DomainError("integrate_1d: requires lo < hi");

  struct Panel {
    double a, b, error;
    T integral;
  };
  auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);

  auto est = gk15<T>(f, lo, hi);
  heap.push({lo, hi, est.error, est.integral});
  T total = est.integral;
  double total_err = est.error;
  int panels = 1;

  // Roundoff guard: when the integrand is noise-limited (e.g. built from
  // differenced kernel evaluations) the error estimate saturates; accept
  // the estimate instead of splitting forever.
  double best_err = total_err;
  int stagnant = 0;

  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (panels >= spec.max_subdivisions)
      throw NonConvergence("integrate_1d: subdivision limit reached");
    if (total_err < 0.8 * best_err) {
      best_err = total_err;
      stagnant = 0;
    } else if (++stagnant > 1000) {
      break;
    }
    Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) {
      // Panel narrowed to machine resolution; accept its estimate.
      total_err -= p.error;
      continue;
    }
    auto left = gk15<T>(f, p.a, mid);
    auto right = gk15<T>(f, mid, p.b);
    total += left.integral + right.integral - p.integral;
    total_err += left.error + right.error - p.error;
    heap.push({p.a, mid, left.error, left.integral});
    heap.push({mid, p.b, right.error, right.integral});
    ++panels;
  }
  return total;
}

template <typename T>
struct PolarOut {
  T value;
  double r_max;
  int phi_nodes;
};

// One radial pass at a fixed angular resolution.
template <typename T>
std::pair<T, double> polar_radial(
    const std::function<T(double, double)>& g, int n_phi,
    const QuadratureSpec& spec) {
  const double dphi = 2.0 * M_PI / n_phi;
  std::function<T(double)> f_rad = [&](double r) -> T {
    T s{};
    for (int j = 0; j < n_phi; ++j) {
      s += g(r, (j + 0.5) * dphi);
    }
    return s * (dphi * std::sinh(r));
  };

  constexpr double kHardCap = 200.0;
  T total{};
  int quiet_panels = 0;
  double r = 0.0;
  while (r < kHardCap) {
    const double r_next = r + 1.0;
    T panel = adaptive_1d<T>(f_rad, r, r_next, spec);
    total += panel;
    r = r_next;
    const double floor =
        std::max(spec.truncation_threshold * std::abs(total), spec.abs_tol);
    if (std::abs(panel) < floor)
      ++quiet_panels;
    else
      quiet_panels = 0;
    if (quiet_panels >= 3) return {total, r};
  }
  throw NonConvergence("integrate_polar: no radial decay before hard cap");
}

template <typename T>
PolarOut<T> adaptive_polar(const std::function<T(double, double)>& g,
                           const QuadratureSpec& spec) {
  T prev{};
  double r_max = 0.0;
  for (int n_phi = 64; n_phi <= 1024; n_phi *= 2) {
    auto [value, r_used] = polar_radial<T>(g, n_phi, spec);
    r_max = r_used;
    if (n_phi > 64) {
      const double tol =
          10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
      if (std::abs(value - prev) <= tol) return {value, r_max, n_phi};
    }
    prev = value;
  }
  throw NonConvergence("integrate_polar: angular refinement did not converge");
}

}  // namespace

RootBracket RootBracket::from(const std::function<double(double)>& f,
                              double lo, double hi) {
  RootBracket br{lo, hi, f(lo), f(hi)};
  if (!(br.lo < br.hi) || !(br.f_lo * br.f_hi < 0.0))
    throw BadBracket("RootBracket: endpoints must straddle a sign change");
  return br;
}

double integrate_1d(const std::function<double(double)>& f, double lo,
                    double hi, const QuadratureSpec& spec) {
  return adaptive_1d<double>(f, lo, hi, spec);
}

std::complex<double> integrate_1d_complex(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    const QuadratureSpec& spec) {
  return adaptive_1d<std::complex<double>>(f, lo, hi, spec);
}

PolarResult integrate_polar(const std::function<double(double, double)>& g,
                            const QuadratureSpec& spec) {
  auto out = adaptive_polar<double>(g, spec);
  return {out.value, out.r_max, out.phi_nodes};
}

PolarResultC integrate_polar_complex(
    const std::function<std::complex<double>(double, double)>& g,
    const QuadratureSpec& spec) {
  auto out = adaptive_polar<std::complex<double>>(g, spec);
  return {out.value, out.r_max, out.phi_nodes};
}

double find_root(const std::function<double(double)>& f,
                 const RootBracket& bracket, double tol) {
  double a = bracket.lo, b = bracket.hi;
  double fa = bracket.f_lo, fb = bracket.f_hi;
  if (!(a < b) || !(fa * fb < 0.0))
    throw BadBracket("find_root: invalid bracket");

  double best_x = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::min(std::abs(fa), std::abs(fb));

  for (int iter = 0; iter < 300; ++iter) {
    // Secant candidate, safeguarded by bisection.
    double x = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!std::isfinite(x) || x <= a || x >= b) x = mid;
    // Keep strictly interior even when the bracket collapses.
    if (x <= a) x = std::nextafter(a, b);
    if (x >= b) x = std::nextafter(b, a);
    if (x <= a || x >= b) break;  // bracket at machine resolution

    const double fx = f(x);
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    if (std::abs(fx) <= tol) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    // Stagnating secant: force a bisection step every so often.
    if (iter % 8 == 7) {
      const double m = 0.5 * (a + b);
      if (m > a && m < b) {
        const double fm = f(m);
        if (std::abs(fm) < best_f) {
          best_f = std::abs(fm);
          best_x = m;
        }
        if (std::abs(fm) <= tol) return m;
        if (fa * fm < 0.0) {
          b = m;
          fb = fm;
        } else {
          a = m;
          fa = fm;
        }
      }
    }
  }
  if (best_f <= tol) return best_x;
  throw NonConvergence("find_root: |f| did not reach tolerance");
}

}  // namespace hypmag
