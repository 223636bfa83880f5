#include "boprop/cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "boprop/cli/artifacts.hpp"
#include "boprop/cutoff.hpp"
#include "boprop/errors.hpp"
#include "boprop/spectral.hpp"
#include "boprop/version.hpp"

namespace boprop::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json oracle_json() {
  const auto h = hamiltonian_sign_oracle();
  const auto s = soliton_direction_oracle();
  return {{"hamiltonian_potential_sign", h.sign},
          {"hamiltonian_drift_coarse", {{"plus", h.drift_coarse[0]}, {"minus", h.drift_coarse[1]}}},
          {"hamiltonian_drift_fine", {{"plus", h.drift_fine[0]}, {"minus", h.drift_fine[1]}}},
          {"soliton_sigma", s.sigma},
          {"soliton_residual_chosen", s.chosen},
          {"soliton_residual_rejected", s.rejected}};
}

json base_manifest(const RunConfig& c, const std::string& command) {
  return {{"artifact", "boprop"},
          {"version", boprop::version},
          {"command", command},
          {"config_hash", config_hash(c)},
          {"config", to_json(c)},
          {"seed", c.seed},
          {"oracles", oracle_json()},
          {"started_at", utc_now()}};
}

void say(const CommandOptions& o, const std::string& msg) {
  if (!o.quiet) std::cout << msg << std::endl;
}

}  // namespace

double fitted_order(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SimulationResult run_simulation(const RunConfig& c, const std::optional<fs::path>& fields_dir) {
  const auto start = std::chrono::steady_clock::now();
  SimulationResult r;
  r.config = c;
  const auto grid = make_grid(c);
  const auto u0 = make_datum(resolve_datum(c, *grid), grid);
  const auto cfg = make_solver_config(c, u0);
  r.dt = cfg.effective_dt();
  r.steps = cfg.step_count();

  std::vector<Window> windows;
  for (const auto& w : c.windows) {
    windows.emplace_back(w);
    r.windows.push_back(WindowResult{w, {}, INFINITY, false});
  }

  auto hook = [&](const Snapshot& s) {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      auto rec = diagnose(s.u, windows[i], s.t);
      const auto& ws = c.windows[i];
      const double cut = ws.x0 + ws.eps - ws.v * s.t;
      r.windows[i].min_seam_margin = std::min(r.windows[i].min_seam_margin, grid->x_right() - cut);
      if (!std::isfinite(rec.tail)) r.windows[i].tail_rejected = true;
      r.windows[i].series.append(rec);
    }
    r.max_seam_fraction = std::max(r.max_seam_fraction, seam_energy_fraction(s.u));
    if (fields_dir && c.output.fields != FieldDumps::None) {
      const bool last = s.step == r.steps;
      if (c.output.fields == FieldDumps::All || s.step == 0 || last) {
        char name[64];
        std::snprintf(name, sizeof name, "field_%08zu.bin", s.step);
        write_field(*fields_dir / name, s.u, s.t);
      }
    }
  };

  try {
    const auto traj = integrate(u0, cfg, c.pde, hook);
    r.baseline = traj.baseline;
    r.mass_drift = traj.max_mass_drift();
    r.l2_relative_drift = traj.max_l2_relative_drift();
    r.hamiltonian_drift = traj.max_hamiltonian_drift();
    r.sup_history = traj.sup_history;
  } catch (const TrajectoryBlowUp& e) {
    r.blew_up = true;
    r.blowup_message = e.what();
    r.blowup_time = e.time();
    r.baseline = e.partial().baseline;
    r.mass_drift = e.partial().max_mass_drift();
    r.l2_relative_drift = e.partial().max_l2_relative_drift();
    r.hamiltonian_drift = e.partial().max_hamiltonian_drift();
    r.sup_history = e.sup_history();
  }
  r.seam_violated = r.max_seam_fraction > c.seam_tolerance;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int write_run_artifacts(const SimulationResult& r, const fs::path& dir, const std::string& command) {
  fs::create_directories(dir);
  const auto& c = r.config;
  std::vector<DiagnosticSeries> series;
  for (const auto& w : r.windows) series.push_back(w.series);
  write_diagnostics_csv(dir / "diagnostics.csv", c.windows, series);

  json m = base_manifest(c, command);
  m["wall_clock_seconds"] = r.wall_seconds;
  m["effective_dt"] = r.dt;
  m["steps"] = r.steps;
  m["snapshots"] = r.windows.empty() ? 0 : r.windows.front().series.records().size();
  m["drift"] = {{"mass", r.mass_drift},
                {"l2_relative", r.l2_relative_drift},
                {"hamiltonian", r.hamiltonian_drift},
                {"baseline", {{"mass", r.baseline.mass}, {"l2", r.baseline.l2}, {"hamiltonian", r.baseline.hamiltonian}}}};
  json windows = json::array();
  for (const auto& w : r.windows) {
    windows.push_back({{"sup_E_m", w.series.sup_energy()},
                       {"cum_F_half", w.series.empty() ? 0.0 : w.series.back().cum_F_half},
                       {"cum_F_eta", w.series.empty() ? 0.0 : w.series.back().cum_F_eta},
                       {"cum_G_flux", w.series.empty() ? 0.0 : w.series.back().cum_G_flux},
                       {"sup_tail", w.series.sup_tail()},
                       {"min_seam_margin", w.min_seam_margin},
                       {"tail_rejected", w.tail_rejected}});
  }
  m["windows"] = windows;
  m["seam"] = {{"max_fraction", r.max_seam_fraction}, {"tolerance", c.seam_tolerance}, {"violated", r.seam_violated}};
  std::string status = "ok";
  int code = kExitOk;
  if (r.blew_up) {
    status = "blowup";
    code = kExitBlowUp;
    m["blowup"] = {{"message", r.blowup_message}, {"time", r.blowup_time}, {"sup_history", r.sup_history}};
  } else if (r.seam_violated) {
    status = "seam_violation";
    code = kExitSeam;
  }
  m["status"] = status;
  write_json(dir / "manifest.json", m);

  if (c.output.plots && !r.windows.empty()) {
    std::vector<PlotSeries> energy, flux;
    for (std::size_t i = 0; i < r.windows.size(); ++i) {
      PlotSeries e{"E_m window " + std::to_string(i), {}, {}};
      PlotSeries fh{"cum F_half " + std::to_string(i), {}, {}};
      PlotSeries fe{"cum F_eta " + std::to_string(i), {}, {}};
      for (const auto& d : r.windows[i].series.records()) {
        e.x.push_back(d.t);
        e.y.push_back(d.E_m);
        fh.x.push_back(d.t);
        fh.y.push_back(d.cum_F_half);
        fe.x.push_back(d.t);
        fe.y.push_back(d.cum_F_eta);
      }
      energy.push_back(std::move(e));
      flux.push_back(std::move(fh));
      flux.push_back(std::move(fe));
    }
    write_line_plot(dir / "plots" / "energy.svg", "windowed energy", "t", energy);
    write_line_plot(dir / "plots" / "smoothing.svg", "cumulative smoothing", "t", flux);
  }
  return code;
}

int cmd_simulate(const RunConfig& c, const CommandOptions& o) {
  const auto r = run_simulation(c, o.out / "fields");
  const int code = write_run_artifacts(r, o.out, "simulate");
  std::ostringstream s;
  s << "simulate: " << r.steps << " steps, dt " << r.dt;
  if (!r.windows.empty()) s << ", sup E_m " << r.windows.front().series.sup_energy();
  if (r.blew_up) s << "; blow-up at t = " << r.blowup_time;
  if (r.seam_violated) s << "; seam fraction " << r.max_seam_fraction << " above tolerance";
  say(o, s.str());
  return code;
}

int cmd_sweep(const RunConfig& c, const CommandOptions& o) {
  const auto points = expand_lattice(c.sweep);
  std::vector<std::string> keys;
  for (const auto& g : c.sweep.lattice)
    for (const auto& k : g.keys) keys.push_back(k);

  struct Row {
    std::string status = "error";
    std::string message;
    SimulationResult result;
  };
  std::vector<Row> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      char name[32];
      std::snprintf(name, sizeof name, "%05zu", i);
      const fs::path dir = o.out / "runs" / name;
      try {
        RunConfig rc = c;
        for (const auto& [k, v] : points[i]) apply_sweep_value(rc, k, v);
        rc.sweep = {};
        rc = parse_config(to_json(rc));
        rows[i].result = run_simulation(rc, dir / "fields");
        const int code = write_run_artifacts(rows[i].result, dir, "sweep");
        rows[i].status = code == kExitOk ? "ok" : code == kExitBlowUp ? "blowup" : "seam_violation";
        if (code == kExitBlowUp) rows[i].message = rows[i].result.blowup_message;
      } catch (const std::exception& e) {
        rows[i].status = "error";
        rows[i].message = e.what();
      }
    }
  };
  unsigned workers = c.sweep.workers ? c.sweep.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "index";
  for (const auto& k : keys) csv << ',' << k;
  csv << ",status,sup_E_m,cum_F_half,cum_F_eta,cum_G_flux,sup_tail,mass_drift,l2_relative_drift,hamiltonian_drift,"
         "seam_fraction,message\n";
  std::size_t ok = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    csv << i;
    for (const auto& [k, v] : points[i]) csv << ',' << fmt(v);
    const auto& row = rows[i];
    csv << ',' << row.status;
    if (row.status == "error") {
      csv << ",,,,,,,,,";
    } else {
      const auto& r = row.result;
      const auto& w = r.windows.front().series;
      csv << ',' << fmt(w.sup_energy()) << ',' << fmt(w.back().cum_F_half) << ',' << fmt(w.back().cum_F_eta) << ','
          << fmt(w.back().cum_G_flux) << ',' << fmt(w.sup_tail()) << ',' << fmt(r.mass_drift) << ','
          << fmt(r.l2_relative_drift) << ',' << fmt(r.hamiltonian_drift) << ',' << fmt(r.max_seam_fraction);
    }
    csv << ',' << csv_escape(row.message) << '\n';
    if (row.status == "ok") ++ok;
  }
  fs::create_directories(o.out);
  write_text(o.out / "sweep.csv", csv.str());
  json m = base_manifest(c, "sweep");
  m["points"] = points.size();
  m["ok"] = ok;
  m["failed"] = points.size() - ok;
  m["workers"] = workers;
  write_json(o.out / "manifest.json", m);
  say(o, "sweep: " + std::to_string(ok) + " of " + std::to_string(points.size()) + " points ok");
  return kExitOk;
}

int cmd_verify_cutoff(const RunConfig& c, const CommandOptions& o) {
  json reports = json::array();
  bool all = true;
  for (const auto& p : c.cutoffs) {
    const auto probe = default_probe(p);
    const auto rep = verify_family(p, *probe);
    json checks = json::array();
    for (const auto& ch : rep.checks)
      checks.push_back({{"id", ch.id}, {"description", ch.description}, {"passed", ch.passed},
                        {"observed", ch.observed}, {"bound", ch.bound}});
    json ladder = json::array();
    for (const auto& l : rep.eta_ladder) ladder.push_back({{"step", l.step}, {"max_divided_difference", l.max_divided_difference}});
    reports.push_back({{"eps", p.eps},
                       {"b", p.b},
                       {"passed", rep.all_passed()},
                       {"probe_spacing", rep.probe_spacing},
                       {"tolerance", rep.tolerance},
                       {"chi_at_3eps", rep.chi_at_3eps},
                       {"cl_constant_2", rep.cl_constant_2},
                       {"cl_constant_3", rep.cl_constant_3},
                       {"checks", checks},
                       {"eta_ladder", ladder}});
    all = all && rep.all_passed();
    say(o, "verify-cutoff eps=" + fmt(p.eps) + " b=" + fmt(p.b) + ": " + (rep.all_passed() ? "pass" : "FAIL"));
  }
  json m = base_manifest(c, "verify-cutoff");
  m["passed"] = all;
  fs::create_directories(o.out);
  write_json(o.out / "cutoff_report.json", {{"passed", all}, {"reports", reports}});
  write_json(o.out / "manifest.json", m);
  return all ? kExitOk : kExitVerify;
}

int cmd_verify_inequalities(const RunConfig& c, const CommandOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto res = run_inequality_suite(c.inequalities);
  json reports = json::array();
  std::ostringstream csv;
  csv << "sample,id,ratio,ratio_refined\n";
  for (const auto& r : res.reports) {
    reports.push_back({{"id", r.id},
                       {"max_ratio", r.max_ratio},
                       {"max_ratio_refined", r.max_ratio_refined},
                       {"refinement_change", r.refinement_change},
                       {"finite", r.finite},
                       {"stable", r.stable}});
    for (std::size_t i = 0; i < r.ratios.size(); ++i)
      csv << i << ',' << csv_escape(r.id) << ',' << fmt(r.ratios[i]) << ',' << fmt(r.ratios_refined[i]) << '\n';
    say(o, r.id + ": max " + fmt(r.max_ratio) + " (refined " + fmt(r.max_ratio_refined) + ")");
  }
  json out = {
      {"normalization",
       "c_j = (1/n) sum_i u_i exp(-2 pi i j i / n); ||(h')^||_1 = sum_j |k_j c_j(h)|; L^inf norms on a 4x oversampled grid"},
      {"seed", res.config.seed},
      {"n", res.config.n},
      {"n_refined", 2 * res.config.n},
      {"length", res.config.length},
      {"samples", res.config.samples},
      {"reports", reports},
      {"symbol_scan",
       {{"sup", res.symbol.sup}, {"xi", res.symbol.xi_at_sup}, {"eta", res.symbol.eta_at_sup}, {"evaluated", res.symbol.evaluated}}},
      {"halfder_route_gap", res.halfder_route_gap},
      {"passed", res.all_passed()}};
  fs::create_directories(o.out);
  write_json(o.out / "inequality_report.json", out);
  write_text(o.out / "inequality_samples.csv", csv.str());
  json m = base_manifest(c, "verify-inequalities");
  m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m["passed"] = res.all_passed();
  write_json(o.out / "manifest.json", m);
  say(o, std::string("symbol scan sup ") + fmt(res.symbol.sup) + ", dual-route gap " + fmt(res.halfder_route_gap));
  return res.all_passed() ? kExitOk : kExitVerify;
}

int cmd_convergence(const RunConfig& c, const CommandOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto& cv = c.convergence;
  if (c.windows.empty()) throw ConfigError("windows", "convergence needs at least one window");
  const Window window(c.windows[cv.window]);
  const double sign = c.solver.t_end < 0.0 ? -1.0 : 1.0;

  // dt ladder: energy identity residual centred at probe_time, plus I3 drift.
  std::vector<double> dts, residuals, drifts;
  json dt_rows = json::array();
  std::ostringstream csv;
  csv << "ladder,value,residual,hamiltonian_drift,difference\n";
  const auto grid = make_grid(c);
  const auto u0 = make_datum(resolve_datum(c, *grid), grid);
  for (double dt : cv.dt_ladder) {
    SolverConfig cfg = make_solver_config(c, u0);
    cfg.dt = sign * dt;
    cfg.t_end = sign * cv.probe_time + cfg.dt;
    cfg.snapshot_stride = 1;
    std::vector<RealField> last;
    std::vector<double> times;
    const auto traj = integrate(u0, cfg, c.pde, [&](const Snapshot& s) {
      last.push_back(s.u);
      times.push_back(s.t);
      if (last.size() > 3) {
        last.erase(last.begin());
        times.erase(times.begin());
      }
    });
    if (last.size() < 3) throw ConfigError("convergence.probe_time", "too few steps before the probe time");
    const auto terms = energy_identity_residual(last[0], last[1], last[2], times[1], traj.dt, window, c.pde,
                                                cfg.dealias);
    dts.push_back(dt);
    residuals.push_back(terms.residual);
    drifts.push_back(traj.max_hamiltonian_drift());
    dt_rows.push_back({{"dt", traj.dt}, {"t", times[1]}, {"residual", terms.residual}, {"half_dEdt", terms.half_dEdt},
                       {"a1", terms.a1}, {"a2", terms.a2}, {"a3", terms.a3},
                       {"hamiltonian_drift", drifts.back()}});
    csv << "dt," << fmt(dt) << ',' << fmt(terms.residual) << ',' << fmt(drifts.back()) << ",\n";
  }
  const double residual_order = fitted_order(dts, residuals);
  const double drift_order = fitted_order(dts, drifts);

  // N ladder: final fields compared with the finest level on the coarse points.
  std::vector<RealField> finals;
  for (std::size_t n : cv.n_ladder) {
    RunConfig rc = c;
    rc.grid.n = n;
    const auto g = make_grid(rc);
    const auto u = make_datum(resolve_datum(rc, *g), g);
    SolverConfig cfg = make_solver_config(rc, u);
    cfg.snapshot_stride = 1 << 30;
    cfg.keep_fields = true;
    finals.push_back(integrate(u, cfg, rc.pde).snapshots.back().u);
  }
  json n_rows = json::array();
  const auto& finest = finals.back();
  for (std::size_t l = 0; l + 1 < finals.size(); ++l) {
    const auto& u = finals[l];
    const std::size_t ratio = finest.size() / u.size();
    if (ratio * u.size() != finest.size() || u.grid().x_left() != finest.grid().x_left())
      throw ConfigError("convergence.n_ladder", "sizes must divide the finest size");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - finest[i * ratio];
      s += d * d;
    }
    const double diff = std::sqrt(s * u.grid().spacing());
    n_rows.push_back({{"n", cv.n_ladder[l]}, {"difference_to_finest", diff}});
    csv << "n," << cv.n_ladder[l] << ",,," << fmt(diff) << '\n';
  }

  const bool passed = residual_order >= 1.9;
  json out = {{"dt_ladder", dt_rows},
              {"residual_order", residual_order},
              {"hamiltonian_drift_order", drift_order},
              {"n_ladder", n_rows},
              {"finest_n", cv.n_ladder.back()},
              {"passed", passed}};
  fs::create_directories(o.out);
  write_json(o.out / "convergence.json", out);
  write_text(o.out / "convergence.csv", csv.str());
  json m = base_manifest(c, "convergence");
  m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m["passed"] = passed;
  write_json(o.out / "manifest.json", m);
  say(o, "convergence: residual order " + fmt(residual_order) + ", I3 drift order " + fmt(drift_order));
  return passed ? kExitOk : kExitVerify;
}

}  // namespace boprop::cli
