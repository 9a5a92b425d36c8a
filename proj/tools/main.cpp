// Command-line front end: emits JSON/CSV reports for the spectral and
// geometric-phase computations.
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypmag/berry.hpp"
#include "hypmag/verify.hpp"

using json = nlohmann::ordered_json;
using namespace hypmag;

namespace {

constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Common {
  double a = 1.0;
  double nu = 1.0;
  std::optional<double> b;
  std::optional<double> B;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::string format = "json";
  std::string out;
  double rel_tol = 1e-10;
  double h_rel = 1e-4;

  ModelParams params() const {
    if (b.has_value() == B.has_value())
      throw ConfigError("exactly one of --b / --B must be given");
    ModelParams p{a, b ? *b : *B * a * a, nu};
    p.validate();
    return p;
  }

  double coupling() const {
    if (alpha.has_value() == lambda.has_value())
      throw ConfigError("exactly one of --alpha / --lambda must be given");
    return alpha ? *alpha : alpha_from_lambda(*lambda);
  }

  QuadratureSpec quad() const {
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    return spec;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--a", c.a, "curvature radius (a > 0)");
  cmd->add_option("--nu", c.nu, "curvature-term weight");
  cmd->add_option("--b", c.b, "reduced field b = B a^2");
  cmd->add_option("--B", c.B, "field strength B");
  cmd->add_option("--alpha", c.alpha, "coupling parameter");
  cmd->add_option("--lambda", c.lambda, "scattering length (2 pi alpha = ln lambda)");
  cmd->add_option("--format", c.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "write output to PATH (atomic)");
  cmd->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--h-rel", c.h_rel, "relative differentiation step");
}

Point parse_point(const std::string& s) {
  double x, y;
  char trail;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &x, &y, &trail) != 2)
    throw ConfigError("expected a point as cx,cy: " + s);
  const Point w{x, y};
  require_upper_half_plane(w);
  return w;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file: " + tmp);
    f << text;
  }
  if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
    throw ConfigError("cannot rename output into place: " + out_path);
}

json params_json(const Common& c, const ModelParams& p) {
  json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["B"] = p.b / (p.a * p.a);
  j["nu"] = p.nu;
  if (c.alpha || c.lambda) {
    const double alpha = c.coupling();
    j["alpha"] = alpha;
    j["lambda"] = lambda_from_alpha(alpha);
  }
  return j;
}

void emit(const Common& c, const json& j, const std::string& csv) {
  write_output(c.format == "json" ? j.dump(2) + "\n" : csv, c.out);
}

// --- levels -----------------------------------------------------------------

int cmd_levels(const Common& c) {
  const ModelParams p = c.params();
  const auto lv = landau_levels(p);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["levels"] = json::array();
  std::string csv = "n,energy\n";
  for (const auto& [n, e] : lv) {
    j["levels"].push_back({{"n", n}, {"energy", e}});
    csv += std::to_string(n) + "," + fmt17(e) + "\n";
  }
  j["threshold"] = threshold(p);
  csv += "threshold," + fmt17(threshold(p)) + "\n";
  emit(c, j, csv);
  return 0;
}

// --- qfunction --------------------------------------------------------------

int cmd_qfunction(const Common& c, const std::string& grid_spec) {
  const ModelParams p = c.params();
  const QConvention conv = QConvention::standard();
  const QConvention resolved = QConvention::resolve(p);

  double lo = -10.0, hi = threshold(p) - 1e-6;
  int n = 101;
  if (!grid_spec.empty()) {
    const auto g = parse_list(grid_spec);
    if (g.size() != 3) throw ConfigError("--grid expects lo,hi,n");
    lo = g[0];
    hi = g[1];
    n = static_cast<int>(g[2]);
    if (n < 2 || !(lo < hi)) throw ConfigError("--grid needs lo < hi, n >= 2");
  }
  const auto lv = landau_levels(p);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["convention"] = {{"sign", resolved.sign},
                     {"oracle_drift", resolved.oracle_drift}};
  j["rows"] = json::array();
  std::string csv = "zeta,Q,dQ_dzeta\n";
  for (int i = 0; i < n; ++i) {
    const double zeta = lo + (hi - lo) * i / (n - 1.0);
    if (zeta >= threshold(p)) continue;
    bool near_pole = false;
    for (const auto& [k, e] : lv) near_pole |= std::abs(zeta - e) < 1e-9;
    if (near_pole) continue;
    const double q = q_closed_form(zeta, p, conv);
    const double dq = q_derivative(zeta, p, conv);
    j["rows"].push_back({{"zeta", zeta}, {"Q", q}, {"dQ_dzeta", dq}});
    csv += fmt17(zeta) + "," + fmt17(q) + "," + fmt17(dq) + "\n";
  }
  emit(c, j, csv);
  return 0;
}

// --- spectrum ---------------------------------------------------------------

int cmd_spectrum(const Common& c, const std::string& w_spec) {
  const ModelParams p = c.params();
  const double alpha = c.coupling();
  const QConvention conv = QConvention::standard();
  const Point w = w_spec.empty() ? Point{0.0, 1.0} : parse_point(w_spec);
  const auto ivs = intervals(p);
  const auto states = bound_states(alpha, w, p, conv);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["states"] = json::array();
  std::string csv = "k,interval_lo,interval_hi,energy,c_k,residual,status\n";
  for (const auto& iv : ivs) {
    const BoundState* match = nullptr;
    for (const auto& s : states)
      if (s.k == iv.index) match = &s;
    json row;
    row["k"] = iv.index;
    row["interval"] = {iv.lo, iv.hi};
    row["kind"] =
        iv.kind == SpectralInterval::Kind::Special ? "special" : "regular";
    if (match) {
      const double residual =
          std::abs(q_closed_form(match->energy, p, conv) - alpha);
      row["energy"] = match->energy;
      row["c_k"] = match->c_k;
      row["residual"] = residual;
      row["status"] = "solved";
      csv += std::to_string(iv.index) + "," + fmt17(iv.lo) + "," +
             fmt17(iv.hi) + "," + fmt17(match->energy) + "," +
             fmt17(match->c_k) + "," + fmt17(residual) + ",solved\n";
    } else {
      row["status"] = "unsolvable";
      row["alpha"] = alpha;
      row["threshold_limit"] = q_threshold_limit(p, conv);
      csv += std::to_string(iv.index) + "," + fmt17(iv.lo) + "," +
             fmt17(iv.hi) + ",,,,unsolvable\n";
    }
    j["states"].push_back(row);
  }
  emit(c, j, csv);
  return 0;
}

// --- wavefunction -----------------------------------------------------------

int cmd_wavefunction(const Common& c, const std::string& w_spec, int level,
                     const std::string& window_spec, int nx, int ny) {
  const ModelParams p = c.params();
  const double alpha = c.coupling();
  const QConvention conv = QConvention::standard();
  const Point w = parse_point(w_spec);
  const auto states = bound_states(alpha, w, p, conv);
  const BoundState* match = nullptr;
  for (const auto& s : states)
    if (s.k == level) match = &s;
  if (!match)
    throw SpectrumError("level " + std::to_string(level) +
                        " is not solvable for this coupling");

  double umin = w.x - 2.0, umax = w.x + 2.0;
  double vmin = std::max(w.y / 4.0, 1e-3), vmax = w.y + 2.0;
  if (!window_spec.empty()) {
    const auto g = parse_list(window_spec);
    if (g.size() != 4) throw ConfigError("--window expects umin,umax,vmin,vmax");
    umin = g[0]; umax = g[1]; vmin = g[2]; vmax = g[3];
    if (!(umin < umax) || !(0.0 < vmin) || !(vmin < vmax))
      throw ConfigError("--window needs umin < umax and 0 < vmin < vmax");
  }
  if (nx < 2 || ny < 2) throw ConfigError("--nx/--ny must be >= 2");

  QuadratureSpec spec = c.quad();
  const double norm = norm_check(*match, spec);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["level"] = level;
  j["energy"] = match->energy;
  j["w"] = {w.x, w.y};
  j["norm_check"] = norm;
  j["rows"] = json::array();
  std::string csv = "x,y,re_psi,im_psi,abs2\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Point z{umin + (umax - umin) * ix / (nx - 1.0),
                    vmin + (vmax - vmin) * iy / (ny - 1.0)};
      double re = std::nan(""), im = std::nan(""), abs2 = std::nan("");
      try {
        const Cplx psi = eigenfunction(*match, z);
        re = psi.real();
        im = psi.imag();
        abs2 = std::norm(psi);
      } catch (const DiagonalSingularity&) {
        // grid point collides with the perturbation site: NaN-marked
      }
      j["rows"].push_back({{"x", z.x},
                           {"y", z.y},
                           {"re_psi", re},
                           {"im_psi", im},
                           {"abs2", abs2}});
      csv += fmt17(z.x) + "," + fmt17(z.y) + "," + fmt17(re) + "," +
             fmt17(im) + "," + fmt17(abs2) + "\n";
    }
  }
  emit(c, j, csv);
  return 0;
}

// --- berry connection -------------------------------------------------------

int cmd_berry_connection(const Common& c, const std::string& w_spec,
                         int level) {
  const ModelParams p = c.params();
  const double alpha = c.coupling();
  const QConvention conv = QConvention::standard();
  const Point w = parse_point(w_spec);
  const auto states = bound_states(alpha, w, p, conv);
  const BoundState* match = nullptr;
  for (const auto& s : states)
    if (s.k == level) match = &s;
  if (!match)
    throw SpectrumError("level " + std::to_string(level) +
                        " is not solvable for this coupling");

  const auto numeric = berry_connection_numeric(*match, c.h_rel, c.quad());
  const auto analytic = berry_connection_analytic(w, p);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["level"] = level;
  j["w"] = {w.x, w.y};
  j["numeric"] = {{"u_component", numeric.u_component},
                  {"v_component", numeric.v_component},
                  {"imag_residue", numeric.imag_residue}};
  j["analytic"] = {{"u_component", analytic.u_component},
                   {"v_component", analytic.v_component}};
  std::string csv =
      "u_component,v_component,analytic_u,analytic_v,imag_residue\n";
  csv += fmt17(numeric.u_component) + "," + fmt17(numeric.v_component) + "," +
         fmt17(analytic.u_component) + "," + fmt17(analytic.v_component) +
         "," + fmt17(numeric.imag_residue) + "\n";
  emit(c, j, csv);
  return 0;
}

// --- berry phase ------------------------------------------------------------

LoopSpec build_loop(const Common& c, const std::string& circle,
                    const std::string& ellipse, const std::string& polyline,
                    int samples) {
  const int given =
      (!circle.empty()) + (!ellipse.empty()) + (!polyline.empty());
  if (given != 1)
    throw ConfigError("exactly one of --circle / --ellipse / --polyline");
  LoopSpec loop;
  loop.samples = samples;
  loop.a = c.a;
  if (!circle.empty()) {
    const auto g = parse_list(circle);
    if (g.size() != 3) throw ConfigError("--circle expects cx,cy,r");
    loop.shape = GeodesicCircle{{g[0], g[1]}, g[2]};
  } else if (!ellipse.empty()) {
    const auto g = parse_list(ellipse);
    if (g.size() != 4) throw ConfigError("--ellipse expects cx,cy,su,sv");
    loop.shape = CoordinateEllipse{{g[0], g[1]}, g[2], g[3]};
  } else {
    std::ifstream f(polyline);
    if (!f) throw ConfigError("cannot open polyline file: " + polyline);
    Polyline pl;
    double u, v;
    while (f >> u >> v) pl.points.push_back({u, v});
    loop.shape = pl;
  }
  loop.validate();
  return loop;
}

int cmd_berry_phase(const Common& c, const LoopSpec& loop,
                    const std::string& mode, int level,
                    const std::string& alpha_sweep) {
  const ModelParams p = c.params();
  const QConvention conv = QConvention::standard();

  BerryPhaseReport rep;
  if (mode == "analytic") {
    rep = berry_phase_analytic(loop, p);
  } else {
    const double alpha = c.coupling();
    const auto states = bound_states(alpha, loop.at(0.0), p, conv);
    const BoundState* match = nullptr;
    for (const auto& s : states)
      if (s.k == level) match = &s;
    if (!match)
      throw SpectrumError("level " + std::to_string(level) +
                          " is not solvable for this coupling");
    rep = berry_phase_numeric(loop, *match, c.h_rel, c.quad());
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(c, p);
  j["mode"] = mode;
  j["numeric_phase"] = rep.numeric_phase;
  j["analytic_phase"] = rep.analytic_phase;
  j["flux"] = rep.flux;
  j["flux_quanta"] = rep.flux_quanta;
  j["level"] = rep.level;
  j["alpha"] = rep.alpha;
  j["samples_used"] = rep.samples_used;
  j["degenerate"] = rep.degenerate;

  if (!alpha_sweep.empty()) {
    const auto alphas = parse_list(alpha_sweep);
    const auto sweep =
        alpha_independence_check(loop, alphas, level, p, conv, c.quad());
    json sj;
    sj["alphas"] = sweep.alphas;
    sj["phases"] = sweep.phases;
    sj["max_pairwise_deviation"] = sweep.max_pairwise_deviation;
    sj["analytic_phase"] = sweep.analytic_phase;
    j["alpha_sweep"] = sj;
  }

  std::string csv =
      "numeric_phase,analytic_phase,flux,flux_quanta,samples_used,degenerate\n";
  csv += fmt17(rep.numeric_phase) + "," + fmt17(rep.analytic_phase) + "," +
         fmt17(rep.flux) + "," + fmt17(rep.flux_quanta) + "," +
         std::to_string(rep.samples_used) + "," +
         (rep.degenerate ? "1" : "0") + "\n";
  emit(c, j, csv);
  return 0;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const std::vector<int>& only) {
  int failures = 0;
  const std::vector<int> ids = only.empty()
                                   ? std::vector<int>{1, 2, 3, 4, 5,
                                                      6, 7, 8, 9, 10}
                                   : only;
  for (int id : ids) {
    for (const auto& r : verify::run_all({id})) {
      std::printf("[%s] criterion %2d: %s (%s; %.2f s)\n",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.c_str(), r.seconds);
      std::fflush(stdout);
      if (!r.passed) ++failures;
    }
  }
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-perturbed magnetic Schrodinger operator on the "
               "Lobachevsky plane: levels, Q-function, spectra, geometric "
               "phases"};
  app.require_subcommand(1);

  Common c_levels, c_q, c_spec, c_wave, c_conn, c_phase;
  std::string grid_spec, w_spec_spectrum, w_spec_wave, w_spec_conn;
  std::string window_spec;
  int nx = 41, ny = 41, level_wave = 0, level_conn = 0, level_phase = 0;
  std::string circle, ellipse, polyline, mode = "analytic", alpha_sweep;
  int samples = 256;
  std::vector<int> verify_only;

  auto* levels = app.add_subcommand("levels", "Landau levels and threshold");
  add_common(levels, c_levels);

  auto* qfn = app.add_subcommand("qfunction", "Krein Q-function samples");
  add_common(qfn, c_q);
  qfn->add_option("--grid", grid_spec, "zeta grid as lo,hi,n");

  auto* spectrum =
      app.add_subcommand("spectrum", "perturbed bound-state energies");
  add_common(spectrum, c_spec);
  spectrum->add_option("--w", w_spec_spectrum, "perturbation site cx,cy");

  auto* wave = app.add_subcommand("wavefunction", "bound-state grid");
  add_common(wave, c_wave);
  wave->add_option("--w", w_spec_wave, "perturbation site cx,cy")->required();
  wave->add_option("--level", level_wave, "bound-state index k");
  wave->add_option("--window", window_spec, "umin,umax,vmin,vmax");
  wave->add_option("--nx", nx, "grid columns");
  wave->add_option("--ny", ny, "grid rows");

  auto* conn =
      app.add_subcommand("berry-connection", "geometric connection at w");
  add_common(conn, c_conn);
  conn->add_option("--w", w_spec_conn, "perturbation site cx,cy")->required();
  conn->add_option("--level", level_conn, "bound-state index k");

  auto* phase = app.add_subcommand("berry-phase", "geometric phase on a loop");
  add_common(phase, c_phase);
  phase->add_option("--circle", circle, "geodesic circle cx,cy,r");
  phase->add_option("--ellipse", ellipse, "coordinate ellipse cx,cy,su,sv");
  phase->add_option("--polyline", polyline, "polyline file, one 'u v' per line");
  phase->add_option("--samples", samples, "loop sample count");
  phase->add_option("--mode", mode, "analytic or numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  phase->add_option("--level", level_phase, "bound-state index k");
  phase->add_option("--alpha-sweep", alpha_sweep,
                    "comma list of couplings for the independence check");

  auto* verify_cmd =
      app.add_subcommand("verify", "run the acceptance verification suite");
  verify_cmd->add_option("--only", verify_only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (levels->parsed()) return cmd_levels(c_levels);
    if (qfn->parsed()) return cmd_qfunction(c_q, grid_spec);
    if (spectrum->parsed()) return cmd_spectrum(c_spec, w_spec_spectrum);
    if (wave->parsed())
      return cmd_wavefunction(c_wave, w_spec_wave, level_wave, window_spec,
                              nx, ny);
    if (conn->parsed()) return cmd_berry_connection(c_conn, w_spec_conn,
                                                    level_conn);
    if (phase->parsed())
      return cmd_berry_phase(
          c_phase, build_loop(c_phase, circle, ellipse, polyline, samples),
          mode, level_phase, alpha_sweep);
    if (verify_cmd->parsed()) return cmd_verify(verify_only);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 2;
}
