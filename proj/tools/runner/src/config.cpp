#include "boprop/cli/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "boprop/errors.hpp"

namespace boprop::cli {

using nlohmann::json;

namespace {

// Reads keys of one object, remembering which were consumed so that leftovers
// can be reported as unknown.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a table");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return convert<T>(raw(key), at(key));
  }

  template <class T>
  T need(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(at(key), "required key is missing");
    return convert<T>(raw(key), at(key));
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!ok.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
  }

  template <class T>
  static T convert(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(path, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<std::int64_t>() < 0) throw ConfigError(path, "expected a nonnegative integer");
      }
      return v.get<T>();
    } else {
      if (!v.is_number()) throw ConfigError(path, "expected a number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
      return d;
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Fn>
auto wrap(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ContractError& e) {
    throw ConfigError(path, e.what());
  }
}

PdeSpec parse_pde(const json& j) {
  Node n(j, "pde");
  PdeSpec p;
  p.family = wrap(n.at("family"), [&] { return parse_family(n.get<std::string>("family", "BO")); });
  p.k = n.get<int>("k", 1);
  p.focusing_sign = n.get<int>("focusing_sign", 1);
  p.nonlinear = n.get<bool>("nonlinear", true);
  n.finish();
  wrap("pde", [&] {
    p.validate();
    return 0;
  });
  return p;
}

GridSettings parse_grid(const json& j) {
  Node n(j, "grid");
  GridSettings g;
  g.n = n.get<std::size_t>("n", g.n);
  g.length = n.get<double>("length", g.length);
  g.x_left = n.get<double>("x_left", -0.5 * g.length);
  n.finish();
  wrap("grid", [&] { return Grid::make(g.n, g.length, g.x_left); });
  return g;
}

SolverSettings parse_solver(const json& j) {
  Node n(j, "solver");
  SolverSettings s;
  if (n.has("dt")) {
    const json& v = n.raw("dt");
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") throw ConfigError("solver.dt", "expected a number or \"auto\"");
    } else {
      s.dt = Node::convert<double>(v, "solver.dt");
      if (*s.dt == 0.0) throw ConfigError("solver.dt", "must be nonzero");
    }
  }
  s.cfl = n.get<double>("cfl", s.cfl);
  if (!(s.cfl > 0.0)) throw ConfigError("solver.cfl", "must be positive");
  s.t_end = n.get<double>("t_end", s.t_end);
  s.scheme = wrap("solver.scheme", [&] { return parse_scheme(n.get<std::string>("scheme", "ETDRK4")); });
  s.dealias = n.get<bool>("dealias", s.dealias);
  s.snapshot_stride = n.get<int>("snapshot_stride", s.snapshot_stride);
  if (s.snapshot_stride < 1) throw ConfigError("solver.snapshot_stride", "must be >= 1");
  s.blowup_ceiling = n.get<double>("blowup_ceiling", s.blowup_ceiling);
  if (!(s.blowup_ceiling > 0.0)) throw ConfigError("solver.blowup_ceiling", "must be positive");
  if (s.dt && s.t_end != 0.0 && ((*s.dt > 0.0) != (s.t_end > 0.0)))
    throw ConfigError("solver.dt", "dt and t_end must have the same sign");
  n.finish();
  return s;
}

// Validates a datum tree and returns its canonical form.
json canonical_datum(const json& j, const std::string& path) {
  Node n(j, path);
  const auto kind = n.need<std::string>("kind");
  json out = {{"kind", kind}};
  if (kind == "gaussian") {
    out["amplitude"] = n.get<double>("amplitude", 1.0);
    out["center"] = n.get<double>("center", 0.0);
    out["width"] = n.get<double>("width", 1.0);
  } else if (kind == "soliton") {
    out["c"] = n.get<double>("c", 1.0);
    out["x_c"] = n.get<double>("x_c", 0.0);
  } else if (kind == "one_sided_singular") {
    const OneSidedDatum d;
    out["gamma"] = n.get<double>("gamma", d.gamma);
    out["x0"] = n.get<double>("x0", d.x0);
    out["amplitude"] = n.get<double>("amplitude", d.amplitude);
    out["bump_width"] = n.get<double>("bump_width", d.bump_width);
    out["background_amplitude"] = n.get<double>("background_amplitude", d.background_amplitude);
    out["background_center"] = n.get<double>("background_center", d.background_center);
    out["background_width"] = n.get<double>("background_width", d.background_width);
  } else if (kind == "mollified") {
    const bool has_tau = n.has("tau"), has_cells = n.has("tau_cells");
    if (has_tau == has_cells) throw ConfigError(n.at("tau"), "give exactly one of tau and tau_cells");
    if (has_tau) out["tau"] = n.get<double>("tau", 0.0);
    else out["tau_cells"] = n.get<double>("tau_cells", 0.0);
    if (!n.has("inner")) throw ConfigError(n.at("inner"), "required key is missing");
    out["inner"] = canonical_datum(n.raw("inner"), n.at("inner"));
  } else if (kind == "samples") {
    const json& v = n.raw("values");
    if (!v.is_array()) throw ConfigError(n.at("values"), "expected an array");
    std::vector<double> vals;
    for (std::size_t i = 0; i < v.size(); ++i)
      vals.push_back(Node::convert<double>(v[i], n.at("values") + "[" + std::to_string(i) + "]"));
    out["values"] = vals;
  } else {
    throw ConfigError(n.at("kind"),
                      "unknown datum kind '" + kind +
                          "' (expected gaussian, soliton, one_sided_singular, mollified or samples)");
  }
  n.finish();
  return out;
}

DatumSpec datum_from_json(const json& j, const Grid& grid) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return {GaussianDatum{j["amplitude"], j["center"], j["width"]}};
  if (kind == "soliton") return {SolitonDatum{j["c"], j["x_c"]}};
  if (kind == "one_sided_singular")
    return {OneSidedDatum{j["gamma"], j["x0"], j["amplitude"], j["bump_width"], j["background_amplitude"],
                          j["background_center"], j["background_width"]}};
  if (kind == "mollified") {
    const double tau = j.contains("tau") ? j["tau"].get<double>() : j["tau_cells"].get<double>() * grid.spacing();
    return mollified(datum_from_json(j["inner"], grid), tau);
  }
  return {SamplesDatum{j["values"].get<std::vector<double>>()}};
}

WindowSpec parse_window(const json& j, const std::string& path) {
  Node n(j, path);
  WindowSpec w;
  w.m = n.get<int>("m", w.m);
  w.eps = n.get<double>("eps", w.eps);
  w.b = n.get<double>("b", w.b);
  w.v = n.get<double>("v", w.v);
  w.x0 = n.get<double>("x0", w.x0);
  n.finish();
  wrap(path, [&] {
    w.validate();
    return 0;
  });
  return w;
}

OutputSettings parse_output(const json& j) {
  Node n(j, "output");
  OutputSettings o;
  const auto f = n.get<std::string>("fields", "final");
  if (f == "none") o.fields = FieldDumps::None;
  else if (f == "final") o.fields = FieldDumps::Final;
  else if (f == "all") o.fields = FieldDumps::All;
  else throw ConfigError("output.fields", "expected none, final or all");
  o.plots = n.get<bool>("plots", o.plots);
  n.finish();
  return o;
}

const std::set<std::string> kSweepKeys = {"eps", "b", "v", "m", "n", "dt", "tau_cells"};

SweepSettings parse_sweep(const json& j) {
  Node n(j, "sweep");
  SweepSettings s;
  s.workers = n.get<unsigned>("workers", 0u);
  if (n.has("lattice")) {
    const json& lat = n.raw("lattice");
    if (!lat.is_array()) throw ConfigError("sweep.lattice", "expected an array of tables");
    for (std::size_t g = 0; g < lat.size(); ++g) {
      const std::string gp = "sweep.lattice[" + std::to_string(g) + "]";
      if (!lat[g].is_object() || lat[g].empty()) throw ConfigError(gp, "expected a nonempty table");
      SweepGroup group;
      for (auto it = lat[g].begin(); it != lat[g].end(); ++it) {
        const std::string kp = gp + "." + it.key();
        if (!kSweepKeys.count(it.key()))
          throw ConfigError(kp, "unknown sweep key (expected eps, b, v, m, n, dt or tau_cells)");
        if (!it->is_array() || it->empty()) throw ConfigError(kp, "expected a nonempty array");
        std::vector<double> vals;
        for (std::size_t i = 0; i < it->size(); ++i)
          vals.push_back(Node::convert<double>((*it)[i], kp + "[" + std::to_string(i) + "]"));
        if (!group.values.empty() && vals.size() != group.size())
          throw ConfigError(kp, "zipped keys in one lattice group must have equal lengths");
        group.keys.push_back(it.key());
        group.values.push_back(std::move(vals));
      }
      s.lattice.push_back(std::move(group));
    }
  }
  n.finish();
  return s;
}

ConvergenceSettings parse_convergence(const json& j, std::size_t window_count) {
  Node n(j, "convergence");
  ConvergenceSettings c;
  if (n.has("dt_ladder")) {
    c.dt_ladder.clear();
    const json& a = n.raw("dt_ladder");
    if (!a.is_array() || a.size() < 2) throw ConfigError("convergence.dt_ladder", "expected at least two steps");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = Node::convert<double>(a[i], "convergence.dt_ladder[" + std::to_string(i) + "]");
      if (!(v > 0.0)) throw ConfigError("convergence.dt_ladder[" + std::to_string(i) + "]", "must be positive");
      c.dt_ladder.push_back(v);
    }
  }
  if (n.has("n_ladder")) {
    c.n_ladder.clear();
    const json& a = n.raw("n_ladder");
    if (!a.is_array() || a.size() < 2) throw ConfigError("convergence.n_ladder", "expected at least two sizes");
    for (std::size_t i = 0; i < a.size(); ++i)
      c.n_ladder.push_back(Node::convert<std::size_t>(a[i], "convergence.n_ladder[" + std::to_string(i) + "]"));
  }
  c.probe_time = n.get<double>("probe_time", c.probe_time);
  c.window = n.get<std::size_t>("window", c.window);
  if (window_count > 0 && c.window >= window_count)
    throw ConfigError("convergence.window", "index out of range");
  n.finish();
  return c;
}

InequalitySuiteConfig parse_inequalities(const json& j, std::uint64_t seed) {
  Node n(j, "inequalities");
  InequalitySuiteConfig c;
  c.n = n.get<std::size_t>("n", c.n);
  c.length = n.get<double>("length", c.length);
  c.x_left = n.get<double>("x_left", -0.5 * c.length);
  c.samples = n.get<std::size_t>("samples", c.samples);
  if (c.samples == 0) throw ConfigError("inequalities.samples", "must be positive");
  c.seed = seed;
  n.finish();
  wrap("inequalities", [&] { return Grid::make(c.n, c.length, c.x_left); });
  return c;
}

std::vector<CutoffParams> parse_cutoffs(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("cutoffs", "expected a nonempty array");
  std::vector<CutoffParams> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "cutoffs[" + std::to_string(i) + "]";
    Node n(j[i], path);
    CutoffParams p;
    p.eps = n.need<double>("eps");
    p.b = n.need<double>("b");
    n.finish();
    wrap(path, [&] {
      p.validate();
      return 0;
    });
    out.push_back(p);
  }
  return out;
}

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p = {
      {"theorem1-forward", R"({
  "pde": {"family": "BO"},
  "grid": {"n": 1024, "length": 200},
  "solver": {"dt": 0.002, "t_end": 0.5, "snapshot_stride": 5},
  "datum": {"kind": "mollified", "tau_cells": 1,
            "inner": {"kind": "one_sided_singular", "gamma": 1.3, "x0": 0, "amplitude": 1, "bump_width": 4,
                      "background_amplitude": 0.5, "background_center": 3, "background_width": 1}},
  "windows": [{"m": 2, "eps": 0.5, "b": 2.5, "v": 1, "x0": 0}]
})"},
      {"corollary-backward", R"({
  "pde": {"family": "BO"},
  "grid": {"n": 1024, "length": 200},
  "solver": {"dt": -0.002, "t_end": -0.25, "snapshot_stride": 5},
  "datum": {"kind": "mollified", "tau_cells": 1,
            "inner": {"kind": "one_sided_singular", "gamma": 1.3, "x0": 0, "amplitude": 1, "bump_width": 4,
                      "background_amplitude": 0.5, "background_center": 3, "background_width": 1}},
  "windows": [{"m": 2, "eps": 0.5, "b": 2.5, "v": 0, "x0": -1.5}]
})"},
      {"mollification-ladder", R"({
  "pde": {"family": "BO"},
  "grid": {"n": 1024, "length": 200},
  "solver": {"dt": 0.002, "t_end": 0.5, "snapshot_stride": 5},
  "datum": {"kind": "mollified", "tau_cells": 1,
            "inner": {"kind": "one_sided_singular", "gamma": 1.3, "x0": 0, "amplitude": 1, "bump_width": 4,
                      "background_amplitude": 0.5, "background_center": 3, "background_width": 1}},
  "windows": [{"m": 2, "eps": 0.5, "b": 2.5, "v": 1, "x0": 0}],
  "output": {"fields": "final", "plots": false},
  "sweep": {"lattice": [{"tau_cells": [4, 2, 1, 0.5]}]}
})"},
      {"gkdv-comparison", R"({
  "pde": {"family": "gKdV", "k": 1},
  "grid": {"n": 2048, "length": 400, "x_left": -200},
  "solver": {"dt": 0.002, "t_end": 0.5, "snapshot_stride": 5},
  "datum": {"kind": "mollified", "tau_cells": 4,
            "inner": {"kind": "one_sided_singular", "gamma": 1.3, "x0": 0, "amplitude": 1, "bump_width": 4,
                      "background_amplitude": 0.5, "background_center": 3, "background_width": 1}},
  "windows": [{"m": 2, "eps": 0.5, "b": 2.5, "v": 1, "x0": 0}]
})"},
      {"defocussing-mirror", R"({
  "pde": {"family": "BO", "focusing_sign": -1},
  "grid": {"n": 1024, "length": 200},
  "solver": {"dt": 0.002, "t_end": 0.5, "snapshot_stride": 5},
  "datum": {"kind": "mollified", "tau_cells": 1,
            "inner": {"kind": "one_sided_singular", "gamma": 1.3, "x0": 0, "amplitude": 1, "bump_width": 4,
                      "background_amplitude": 0.5, "background_center": 3, "background_width": 1}},
  "windows": [{"m": 2, "eps": 0.5, "b": 2.5, "v": 1, "x0": 0}]
})"},
  };
  return p;
}

json scheme_json(Scheme s) { return to_string(s); }

}  // namespace

RunConfig parse_config(const json& j) {
  Node root(j, "");
  root.allow({"seed", "seam_tolerance", "pde", "grid", "solver", "output", "datum", "windows", "sweep", "convergence",
              "inequalities", "cutoffs"});
  RunConfig c;
  const json empty = json::object();
  auto section = [&](const std::string& key) -> const json& { return root.has(key) ? root.raw(key) : empty; };

  c.seed = root.get<std::uint64_t>("seed", c.seed);
  c.seam_tolerance = root.get<double>("seam_tolerance", c.seam_tolerance);
  if (!(c.seam_tolerance > 0.0)) throw ConfigError("seam_tolerance", "must be positive");
  c.pde = parse_pde(section("pde"));
  c.grid = parse_grid(section("grid"));
  c.solver = parse_solver(section("solver"));
  c.output = parse_output(section("output"));

  const auto grid = Grid::make(c.grid.n, c.grid.length, c.grid.x_left);
  if (root.has("datum")) c.datum = canonical_datum(root.raw("datum"), "datum");
  else c.datum = canonical_datum(json{{"kind", "gaussian"}}, "datum");
  wrap("datum", [&] { return make_datum(datum_from_json(c.datum, *grid), grid); });

  if (root.has("windows")) {
    const json& w = root.raw("windows");
    if (!w.is_array()) throw ConfigError("windows", "expected an array of tables");
    for (std::size_t i = 0; i < w.size(); ++i) c.windows.push_back(parse_window(w[i], "windows[" + std::to_string(i) + "]"));
  } else {
    c.windows.push_back(WindowSpec{2, 0.5, 2.5, 1.0, 0.0});
  }
  for (std::size_t i = 0; i < c.windows.size(); ++i) {
    const auto& w = c.windows[i];
    if (w.eps < grid->spacing())
      throw ConfigError("windows[" + std::to_string(i) + "].eps", "window scale eps is below the grid spacing");
    if (w.x0 <= grid->x_left() || w.x0 >= grid->x_right())
      throw ConfigError("windows[" + std::to_string(i) + "].x0", "anchor lies outside the domain");
  }

  c.sweep = parse_sweep(section("sweep"));
  c.convergence = parse_convergence(section("convergence"), c.windows.size());
  c.inequalities = parse_inequalities(section("inequalities"), c.seed);
  if (root.has("cutoffs")) c.cutoffs = parse_cutoffs(root.raw("cutoffs"));
  root.finish();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& source) {
  if (source.rfind("preset:", 0) == 0) return parse_config_text(preset_text(source.substr(7)));
  std::ifstream in(source);
  if (!in) throw ConfigError("", "cannot read config file '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["seam_tolerance"] = c.seam_tolerance;
  j["pde"] = {{"family", to_string(c.pde.family)},
              {"k", c.pde.k},
              {"focusing_sign", c.pde.focusing_sign},
              {"nonlinear", c.pde.nonlinear}};
  j["grid"] = {{"n", c.grid.n}, {"length", c.grid.length}, {"x_left", c.grid.x_left}};
  j["solver"] = {{"dt", c.solver.dt ? json(*c.solver.dt) : json("auto")},
                 {"cfl", c.solver.cfl},
                 {"t_end", c.solver.t_end},
                 {"scheme", scheme_json(c.solver.scheme)},
                 {"dealias", c.solver.dealias},
                 {"snapshot_stride", c.solver.snapshot_stride},
                 {"blowup_ceiling", c.solver.blowup_ceiling}};
  j["datum"] = c.datum;
  j["windows"] = json::array();
  for (const auto& w : c.windows)
    j["windows"].push_back({{"m", w.m}, {"eps", w.eps}, {"b", w.b}, {"v", w.v}, {"x0", w.x0}});
  const char* fields[] = {"none", "final", "all"};
  j["output"] = {{"fields", fields[static_cast<int>(c.output.fields)]}, {"plots", c.output.plots}};
  json lattice = json::array();
  for (const auto& g : c.sweep.lattice) {
    json group = json::object();
    for (std::size_t k = 0; k < g.keys.size(); ++k) group[g.keys[k]] = g.values[k];
    lattice.push_back(group);
  }
  j["sweep"] = {{"lattice", lattice}, {"workers", c.sweep.workers}};
  j["convergence"] = {{"dt_ladder", c.convergence.dt_ladder},
                      {"n_ladder", c.convergence.n_ladder},
                      {"probe_time", c.convergence.probe_time},
                      {"window", c.convergence.window}};
  j["inequalities"] = {{"n", c.inequalities.n},
                       {"length", c.inequalities.length},
                       {"x_left", c.inequalities.x_left},
                       {"samples", c.inequalities.samples}};
  j["cutoffs"] = json::array();
  for (const auto& p : c.cutoffs) j["cutoffs"].push_back({{"eps", p.eps}, {"b", p.b}});
  return j;
}

std::string config_hash(const RunConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : presets()) names.push_back(k);
  return names;
}

const std::string& preset_text(const std::string& name) {
  const auto& p = presets();
  const auto it = p.find(name);
  if (it == p.end()) {
    std::string known;
    for (const auto& [k, v] : p) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("", "unknown preset '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

void apply_sweep_value(RunConfig& c, const std::string& key, double value) {
  auto as_int = [&](const char* what) {
    if (value != std::floor(value)) throw ConfigError("sweep." + key, std::string(what) + " must be an integer");
    return static_cast<long long>(value);
  };
  if (key == "eps") for (auto& w : c.windows) w.eps = value;
  else if (key == "b") for (auto& w : c.windows) w.b = value;
  else if (key == "v") for (auto& w : c.windows) w.v = value;
  else if (key == "m") for (auto& w : c.windows) w.m = static_cast<int>(as_int("m"));
  else if (key == "n") {
    const auto n = as_int("n");
    if (n <= 0) throw ConfigError("sweep.n", "must be positive");
    c.grid.n = static_cast<std::size_t>(n);
  } else if (key == "dt") {
    if (value == 0.0) throw ConfigError("sweep.dt", "must be nonzero");
    c.solver.dt = value;
  } else if (key == "tau_cells") {
    if (c.datum.value("kind", "") != "mollified") throw ConfigError("sweep.tau_cells", "datum is not mollified");
    c.datum.erase("tau");
    c.datum["tau_cells"] = value;
  } else {
    throw ConfigError("sweep." + key, "unknown sweep key");
  }
}

std::vector<std::vector<std::pair<std::string, double>>> expand_lattice(const SweepSettings& s) {
  std::vector<std::vector<std::pair<std::string, double>>> points(1);
  std::size_t total = 1;
  for (const auto& g : s.lattice) {
    total *= g.size();
    if (total > 10000) throw ConfigError("sweep.lattice", "lattice exceeds 10000 points");
  }
  for (const auto& g : s.lattice) {
    std::vector<std::vector<std::pair<std::string, double>>> next;
    for (const auto& p : points)
      for (std::size_t i = 0; i < g.size(); ++i) {
        auto q = p;
        for (std::size_t k = 0; k < g.keys.size(); ++k) q.emplace_back(g.keys[k], g.values[k][i]);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  return points;
}

GridPtr make_grid(const RunConfig& c) { return Grid::make(c.grid.n, c.grid.length, c.grid.x_left); }

DatumSpec resolve_datum(const RunConfig& c, const Grid& grid) { return datum_from_json(c.datum, grid); }

SolverConfig make_solver_config(const RunConfig& c, const RealField& u0) {
  SolverConfig s;
  s.grid = u0.grid_ptr();
  s.t_end = c.solver.t_end;
  if (c.solver.dt) {
    s.dt = *c.solver.dt;
  } else {
    s.dt = stable_dt(u0, c.pde, c.solver.cfl);
    if (c.solver.t_end < 0.0) s.dt = -s.dt;
  }
  s.scheme = c.solver.scheme;
  s.dealias = c.solver.dealias;
  s.snapshot_stride = c.solver.snapshot_stride;
  s.blowup_ceiling = c.solver.blowup_ceiling;
  s.keep_fields = false;
  return s;
}

}  // namespace boprop::cli
