#include "itkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "itkit/classical.hpp"
#include "itkit/coincidence.hpp"
#include "itkit/imaging.hpp"
#include "itkit/propagate.hpp"
#include "itkit/scatter.hpp"
#include "itkit/units.hpp"
#include "json.hpp"

namespace itkit::cli {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_key(const ScenarioConfig& c, const std::string& key, const std::string& why) {
  std::ostringstream os;
  os << c.source;
  if (auto it = c.lines.find(key); it != c.lines.end()) os << ':' << it->second;
  os << ": key '" << key << "': " << why;
  fail(ErrorKind::Config, os.str());
}

double parse_real(const ScenarioConfig& c, const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    bad_key(c, key, "'" + t + "' is not a number");
  }
  if (used != t.size()) bad_key(c, key, "'" + t + "' is not a number");
  return v;
}

void positive(const ScenarioConfig& c, const std::string& key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) bad_key(c, key, "must be positive and finite");
}

std::ofstream open_out(const ScenarioConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  const auto path = c.out_dir / name;
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Config, "cannot write " + path.string());
  os.precision(17);
  return os;
}

void config_comment(std::ostream& os, const ScenarioConfig& c) { os << "# config: " << c.summary() << '\n'; }

std::vector<double> linspace(double a, double b, long n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / double(n - 1);
  return v;
}

// Smallest set of samples holding `coverage` of the total, as a mask.
std::vector<char> probability_region(const std::vector<double>& density, double coverage) {
  std::vector<std::size_t> order(density.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return density[a] > density[b]; });
  const double total = std::accumulate(density.begin(), density.end(), 0.0);
  std::vector<char> mask(density.size(), 0);
  double acc = 0.0;
  for (std::size_t i : order) {
    if (acc >= coverage * total) break;
    mask[i] = 1;
    acc += density[i];
  }
  return mask;
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Domain:
    case ErrorKind::Shape:
    case ErrorKind::Representation:
      return kConfigError;
    case ErrorKind::Infeasible:
    case ErrorKind::Caustic:
    case ErrorKind::Support:
    case ErrorKind::Singularity:
      return kInfeasible;
    case ErrorKind::Aliasing:
    case ErrorKind::Coverage:
    case ErrorKind::Degenerate:
    case ErrorKind::Stability:
    case ErrorKind::Numerical:
    case ErrorKind::Fit:
      return kNumerical;
  }
  return kNumerical;
}

void ScenarioConfig::allow(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values)
    if (!allowed.count(key)) bad_key(*this, key, "unknown key for command '" + command + "'");
}

double ScenarioConfig::real(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) bad_key(*this, key, "required but missing");
  return parse_real(*this, key, it->second);
}

double ScenarioConfig::real(const std::string& key, double fallback) const {
  return has(key) ? real(key) : fallback;
}

long ScenarioConfig::integer(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = real(key);
  if (v != std::floor(v) || std::abs(v) > 1e15) bad_key(*this, key, "must be an integer");
  return static_cast<long>(v);
}

std::vector<double> ScenarioConfig::reals(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) bad_key(*this, key, "required but missing");
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(*this, key, item));
  if (out.empty()) bad_key(*this, key, "empty list");
  return out;
}

std::vector<double> ScenarioConfig::reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? reals(key) : fallback;
}

std::string ScenarioConfig::text(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double ScenarioConfig::energy(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return energy(key);
}

double ScenarioConfig::energy(const std::string& key) const {
  const double v = real(key);
  return ev ? UnitSystem::from_ev(v) : v;
}

double ScenarioConfig::length(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const double v = real(key);
  return cm ? UnitSystem::from_cm(v) : v;
}

std::vector<double> ScenarioConfig::lengths(const std::string& key, std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> v = reals(key);
  if (cm)
    for (double& x : v) x = UnitSystem::from_cm(x);
  return v;
}

std::string ScenarioConfig::summary() const {
  std::ostringstream os;
  os << "command=" << command;
  if (!mode.empty()) os << "; mode=" << mode;
  for (const auto& [k, v] : values) os << "; " << k << '=' << v;
  os << "; seed=" << seed << "; ev=" << (ev ? 1 : 0) << "; cm=" << (cm ? 1 : 0);
  return os.str();
}

ScenarioConfig parse_config(std::istream& is, const std::string& source) {
  ScenarioConfig c;
  c.source = source;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Config, source + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::Config, source + ":" + std::to_string(lineno) + ": empty key");
    if (value.empty()) {
      c.lines[key] = lineno;
      bad_key(c, key, "empty value");
    }
    if (c.values.count(key)) {
      c.lines[key] = lineno;
      bad_key(c, key, "given twice");
    }
    c.values[key] = value;
    c.lines[key] = lineno;
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Config, "cannot open config file " + path.string());
  return parse_config(is, path.string());
}

// ---------------------------------------------------------------------------

int cmd_it_check(const ScenarioConfig& c, std::ostream& err) {
  c.allow({"mass", "sigma_p", "p0", "x0", "times", "grid_n", "grid_dx", "center", "coverage", "stride"});
  const double m = c.real("mass", 1.0);
  const double sigma_p = c.real("sigma_p", 0.25);
  const double p0 = c.real("p0", 1.0);
  const double x0 = c.real("x0", 0.0);
  std::vector<double> times = c.reals("times", {250.0, 500.0, 1000.0, 2000.0});
  const long n = c.integer("grid_n", 32768);
  const double dx = c.real("grid_dx", 0.5);
  const double coverage = c.real("coverage", 0.99);
  const long stride = c.integer("stride", 8);
  positive(c, "mass", m);
  positive(c, "sigma_p", sigma_p);
  positive(c, "grid_dx", dx);
  if (n < 16) bad_key(c, "grid_n", "must be at least 16");
  if (stride < 1) bad_key(c, "stride", "must be at least 1");
  if (!(coverage > 0.0 && coverage < 1.0)) bad_key(c, "coverage", "must lie in (0, 1)");
  for (double t : times) positive(c, "times", t);
  std::sort(times.begin(), times.end());
  const double center = c.real("center", x0 + p0 * times.back() / m);

  const Grid grid = Grid::centered(1, static_cast<std::size_t>(n), dx, center);
  const ComplexField psi0 = sample_gaussian(GaussianPacketSpec::one_d(p0, sigma_p, x0), grid, Representation::Position);
  const ComplexField phi = to_momentum(psi0);

  auto dens = open_out(c, "it_density.csv");
  config_comment(dens, c);
  dens << "t,x,exact_density,it_density\n";
  auto errs = open_out(c, "it_error.csv");
  config_comment(errs, c);
  errs << "t,max_rel_error,region_lo,region_hi\n";

  std::vector<double> history;
  for (double t : times) {
    if (std::abs(x0 + p0 * t / m) < imaging::kMacroscopicRadius)
      err << "warning: t = " << t << ": packet centre at " << x0 + p0 * t / m << " bohr is not macroscopic\n";
    const ComplexField exact = propagate::evolve_free_exact(psi0, m, t);
    const imaging::ITField it = imaging::apply_it_free(phi, m, t, grid);
    for (const std::string& w : it.warnings) err << "warning: t = " << t << ": " << w << '\n';
    const std::vector<double> a = exact.density();
    const std::vector<double> b = it.field.density();
    const std::vector<char> region = probability_region(a, coverage);
    double worst = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!region[i]) continue;
      const double x = grid.axis(0).coord(i);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      worst = std::max(worst, std::abs(b[i] - a[i]) / a[i]);
    }
    for (std::size_t i = 0; i < a.size(); i += static_cast<std::size_t>(stride))
      dens << t << ',' << grid.axis(0).coord(i) << ',' << a[i] << ',' << b[i] << '\n';
    errs << t << ',' << worst << ',' << lo << ',' << hi << '\n';
    history.push_back(worst);
  }
  for (std::size_t k = 1; k < history.size(); ++k)
    if (!(history[k] < history[k - 1]))
      err << "warning: IT error is not decreasing between t = " << times[k - 1] << " and t = " << times[k] << '\n';
  return kOk;
}

int cmd_delays(const ScenarioConfig& c, std::ostream&) {
  c.allow({"N", "masses", "distances", "E", "delays"});
  const std::vector<double> masses = c.reals("masses");
  const std::vector<double> distances = c.lengths("distances", {});
  if (distances.empty()) bad_key(c, "distances", "required but missing");
  const double E = c.energy("E");
  const std::vector<double> delays = c.reals("delays", {});
  const long N = c.integer("N", static_cast<long>(masses.size()));
  if (N < 1 || static_cast<std::size_t>(N) != masses.size()) bad_key(c, "masses", "need exactly N entries");
  if (distances.size() != masses.size()) bad_key(c, "distances", "need one distance per mass");
  if (delays.size() + 1 != masses.size()) bad_key(c, "delays", "need N-1 delays");
  for (double v : masses) positive(c, "masses", v);
  for (double v : distances) positive(c, "distances", v);
  positive(c, "E", E);

  coincidence::Geometry g;
  g.masses = masses;
  g.distances = distances;
  for (std::size_t n = 0; n < masses.size(); ++n) {
    Vec d = Vec::Zero(3);
    d[0] = n % 2 == 0 ? 1.0 : -1.0;
    g.directions.push_back(d);
  }
  const coincidence::InversionReport rep = coincidence::invert_delays_numeric({g, E, delays});
  json j;
  j["momenta_au"] = rep.momenta;
  j["max_residual"] = rep.max_residual;
  j["energy_residual"] = rep.energy_residual;
  j["iterations"] = rep.iterations;
  j["method"] = "newton";
  if (g.symmetric_pair()) {
    const double t = coincidence::characteristic_time(masses[0], distances[0], E);
    const coincidence::PairMomenta pm = coincidence::invert_delays_pair(delays[0] / t, masses[0], E);
    j["tau"] = delays[0] / t;
    j["closed_form_au"] = {pm.p1, pm.p2};
    j["closed_form_scaled"] = {pm.p1 / std::sqrt(masses[0] * E), pm.p2 / std::sqrt(masses[0] * E)};
  }
  j["config"] = c.summary();
  auto os = open_out(c, "momenta.json");
  os << j.dump(2) << '\n';
  return kOk;
}

namespace {

struct PairScenario {
  coincidence::Geometry geometry;
  double E = 0.0;
  double t = 0.0;
  std::vector<double> delta_t;
};

PairScenario pair_scenario(const ScenarioConfig& c) {
  PairScenario s;
  const double m = c.real("mass", 1.0);
  const double r = c.length("r", UnitSystem::from_cm(2.0));
  s.E = c.energy("E", UnitSystem::from_ev(0.37));
  positive(c, "mass", m);
  positive(c, "r", r);
  positive(c, "E", s.E);
  s.geometry = coincidence::Geometry::back_to_back(m, r);
  s.t = coincidence::characteristic_time(m, r, s.E);
  const double lo = c.real("tau_min", -4.0);
  const double hi = c.real("tau_max", 4.0);
  const long bins = c.integer("n_bins", 81);
  if (bins < 5) bad_key(c, "n_bins", "must be at least 5");
  if (!(hi > lo)) bad_key(c, "tau_max", "must exceed tau_min");
  for (double tau : linspace(lo, hi, bins)) s.delta_t.push_back(tau * s.t);
  return s;
}

}  // namespace

int cmd_coincidence(const ScenarioConfig& c, std::ostream& err) {
  const std::string mode = c.mode.empty() ? c.text("mode", "simulate") : c.mode;
  const std::set<std::string> common{"mode", "mass", "r", "E", "tau_min", "tau_max", "n_bins"};
  if (mode == "simulate") {
    std::set<std::string> keys = common;
    keys.insert({"sigma", "Sigma", "peak_count"});
    c.allow(keys);
    const PairScenario s = pair_scenario(c);
    const coincidence::PairModelParams params{c.real("sigma", 1.0), c.real("Sigma", 10.0)};
    positive(c, "sigma", params.sigma);
    positive(c, "Sigma", params.Sigma);
    const double peak = c.real("peak_count", 200.0);
    positive(c, "peak_count", peak);

    const coincidence::Curve curve = coincidence::coincidence_curve(s.geometry, params, s.E, s.delta_t, true);
    for (double d : curve.skipped) err << "note: delay " << d << " has no inversion; skipped\n";
    double sum = 0.0;
    for (const auto& p : curve.points) sum += p.probability;
    const coincidence::CoincidenceDataset ds =
        coincidence::synthesize_dataset(s.geometry, params, s.E, s.delta_t, peak * sum, c.seed);

    auto cs = open_out(c, "curve.csv");
    config_comment(cs, c);
    coincidence::write_curve_csv(cs, curve);
    auto dsf = open_out(c, "dataset.csv");
    config_comment(dsf, c);
    coincidence::write_dataset_csv(dsf, ds);
    return kOk;
  }
  if (mode == "fit") {
    std::set<std::string> keys = common;
    keys.insert({"data", "initial_sigma", "initial_Sigma", "max_iterations"});
    c.allow(keys);
    const PairScenario s = pair_scenario(c);
    if (!c.has("data")) bad_key(c, "data", "required but missing");
    const std::string path = c.text("data", "");
    std::ifstream is(path);
    if (!is) bad_key(c, "data", "cannot open '" + path + "'");
    const coincidence::CoincidenceDataset ds = coincidence::read_dataset_csv(is, s.geometry, s.E);
    const coincidence::PairModelParams init{c.real("initial_sigma", 0.5), c.real("initial_Sigma", 5.0)};
    positive(c, "initial_sigma", init.sigma);
    positive(c, "initial_Sigma", init.Sigma);
    const coincidence::FitResult fit =
        coincidence::fit_pair_model(ds, init, static_cast<int>(c.integer("max_iterations", 500)));
    for (const std::string& note : fit.notes) err << "note: " << note << '\n';
    json j = json::parse(coincidence::fit_report_json(fit));
    j["characteristic_time_au"] = s.t;
    j["config"] = c.summary();
    auto os = open_out(c, "fit.json");
    os << j.dump(2) << '\n';
    return kOk;
  }
  bad_key(c, "mode", "expected 'simulate' or 'fit', got '" + mode + "'");
}

int cmd_xsec(const ScenarioConfig& c, std::ostream&) {
  c.allow({"potential", "V0", "a", "mass", "E", "grid_n", "grid_dx", "n_angles", "theta_min", "theta_max"});
  const std::string kind = c.text("potential", "gaussian");
  if (kind != "gaussian" && kind != "zero") bad_key(c, "potential", "expected 'gaussian' or 'zero'");
  const double V0 = kind == "zero" ? 0.0 : c.energy("V0", 0.01);
  const double a = c.real("a", 1.0);
  const double m = c.real("mass", 1.0);
  const double E = c.energy("E", 0.5);
  const long n = c.integer("grid_n", 48);
  const double dx = c.real("grid_dx", 0.25 * a);
  const long n_angles = c.integer("n_angles", 19);
  const double th0 = c.real("theta_min", 0.0);
  const double th1 = c.real("theta_max", 180.0);
  positive(c, "a", a);
  positive(c, "mass", m);
  positive(c, "E", E);
  positive(c, "grid_dx", dx);
  if (n < 4) bad_key(c, "grid_n", "must be at least 4");
  if (n_angles < 1) bad_key(c, "n_angles", "must be at least 1");
  if (th0 < 0.0 || th1 > 180.0 || th1 < th0) bad_key(c, "theta_max", "angles must satisfy 0 <= min <= max <= 180");

  const Grid grid = Grid::centered(3, static_cast<std::size_t>(n), dx);
  std::vector<double> V(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) V[i] = V0 * std::exp(-grid.point(i).squaredNorm() / (a * a));
  const double p = std::sqrt(2.0 * m * E);
  Vec p_in = Vec::Zero(3);
  p_in[2] = p;

  auto os = open_out(c, "xsec.csv");
  config_comment(os, c);
  os << "theta_deg,q_au,re_f,im_f,dsigma_domega\n";
  for (double deg : linspace(th0, th1, n_angles)) {
    const double th = deg * kPi / 180.0;
    Vec p_out(3);
    p_out << p * std::sin(th), 0.0, p * std::cos(th);
    const scatter::AmplitudeEval f = scatter::born_amplitude(grid, V, p_in, p_out, m);
    os << deg << ',' << (p_in - p_out).norm() << ',' << f.f.real() << ',' << f.f.imag() << ','
       << scatter::cross_section(f) << '\n';
  }
  return kOk;
}

int cmd_greens(const ScenarioConfig& c, std::ostream& err) {
  c.allow({"N", "masses", "mu", "E", "R", "R_min", "R_max", "n_R"});
  const long N = c.integer("N", c.has("masses") ? static_cast<long>(c.reals("masses").size()) : 1);
  if (N < 1) bad_key(c, "N", "must be at least 1");
  const std::vector<double> masses = c.reals("masses", std::vector<double>(static_cast<std::size_t>(N), 1.0));
  if (masses.size() != static_cast<std::size_t>(N)) bad_key(c, "masses", "need exactly N entries");
  for (double v : masses) positive(c, "masses", v);
  const double mu = c.real("mu", masses[0]);
  positive(c, "mu", mu);
  std::vector<double> energies = c.reals("E", {0.5});
  if (c.ev)
    for (double& e : energies) e = UnitSystem::from_ev(e);
  for (double e : energies) positive(c, "E", e);
  std::vector<double> Rs;
  if (c.has("R")) {
    Rs = c.lengths("R", {});
  } else {
    const double lo = c.length("R_min", 1.0);
    const double hi = c.length("R_max", 1e4);
    const long n = c.integer("n_R", 41);
    positive(c, "R_min", lo);
    if (!(hi >= lo)) bad_key(c, "R_max", "must be at least R_min");
    if (n < 1) bad_key(c, "n_R", "must be at least 1");
    for (double u : linspace(std::log(lo), std::log(hi), n)) Rs.push_back(std::exp(u));
  }

  // Separation R along x on particle 1; the hyper vector is then (R, 0, ..., 0).
  std::vector<Vec> origin(masses.size(), Vec::Zero(3));
  std::vector<scatter::GreenEval> rows;
  auto cmp = open_out(c, "greens_compare.csv");
  config_comment(cmp, c);
  cmp << "R,E,reference,candidate,rel_diff\n";
  auto compare = [&](double R, double E, const scatter::GreenEval& ref, const scatter::GreenEval& cand) {
    cmp << R << ',' << E << ',' << scatter::to_string(ref.form) << ',' << scatter::to_string(cand.form) << ','
        << std::abs(cand.value - ref.value) / std::abs(ref.value) << '\n';
  };
  for (double E : energies) {
    const scatter::HyperConfig hc = scatter::hyper_config(masses, origin, mu, E);
    for (double R : Rs) {
      if (R == 0.0) {
        err << "note: R = 0 is a singular point of every Green function; row skipped\n";
        continue;
      }
      Vec X = Vec::Zero(3 * N);
      X[0] = R;
      const Vec X0 = Vec::Zero(3 * N);
      const scatter::GreenEval hank{X, X0, E, scatter::green_hyper_hankel(hc, X, X0), scatter::GreenForm::HyperHankel};
      const scatter::GreenEval asym{X, X0, E, scatter::green_hyper_asymptotic(hc, X, X0),
                                    scatter::GreenForm::HyperAsymptotic};
      if (N == 1) {
        Vec r = Vec::Zero(3);
        r[0] = R * std::sqrt(mu / masses[0]);
        const Vec r0 = Vec::Zero(3);
        const double W = classical::characteristic_action_W_free(r, r0, E, masses[0]);
        const double D = classical::density_D_free(r, r0, masses[0]);
        const scatter::GreenEval exact{X, X0, E, scatter::green_free(r, r0, E, masses[0]),
                                       scatter::GreenForm::ExactFree};
        const scatter::GreenEval semi{X, X0, E, scatter::green_semiclassical(W, D), scatter::GreenForm::Semiclassical};
        rows.insert(rows.end(), {exact, semi});
        compare(R, E, exact, semi);
        compare(R, E, exact, hank);
      }
      rows.insert(rows.end(), {hank, asym});
      compare(R, E, hank, asym);
    }
  }
  auto os = open_out(c, "greens.csv");
  config_comment(os, c);
  scatter::write_green_csv(os, rows);
  return kOk;
}

int run(const ScenarioConfig& config, std::ostream& err) {
  try {
    if (config.command == "it-check") return cmd_it_check(config, err);
    if (config.command == "delays") return cmd_delays(config, err);
    if (config.command == "coincidence") return cmd_coincidence(config, err);
    if (config.command == "xsec") return cmd_xsec(config, err);
    if (config.command == "greens") return cmd_greens(config, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"itkit: imaging-theorem and asymptotic scattering numerics"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool ev = false, cm = false;
  std::string mode;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "config file (key = value)")->required();
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--ev", ev, "energies in the config are in eV");
    sub->add_flag("--cm", cm, "macroscopic distances in the config are in cm");
    return sub;
  };
  add("it-check", "free-space imaging theorem against exact evolution");
  add("delays", "momenta from arrival-time delays");
  add("coincidence", "pair coincidence curve: simulate or fit")
      ->add_option("mode", mode, "simulate | fit")
      ->check(CLI::IsMember({"simulate", "fit"}));
  add("xsec", "Born differential cross section");
  add("greens", "Green-function scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  ScenarioConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.mode = mode;
  config.out_dir = out_dir;
  config.seed = seed;
  config.ev = ev;
  config.cm = cm;
  return run(config, std::cerr);
}

}  // namespace itkit::cli
