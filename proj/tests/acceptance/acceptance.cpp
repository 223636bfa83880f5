#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boprop/cli/config.hpp"
#include "boprop/cli/runner.hpp"
#include "boprop/cutoff.hpp"
#include "boprop/datum.hpp"
#include "boprop/diagnostics.hpp"
#include "boprop/evolution.hpp"
#include "boprop/inequalities.hpp"
#include "boprop/spectral.hpp"

using namespace boprop;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

void log(const std::string& s) { std::printf("    %s\n", s.c_str()); }

double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::abs(*lo);
}

fs::path g_work = "acceptance_work";

// --- 1 ------------------------------------------------------------------------

Outcome spectral_algebra() {
  const auto g = Grid::make(256, 20.0, -10.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  auto random_field = [&] {
    std::vector<double> v(256);
    for (auto& x : v) x = d(rng);
    auto F = forward(RealField(g, v));
    F[g->nyquist_slot()] = 0;  // odd symbols annihilate the unpaired mode
    return inverse(F);
  };
  const auto u = random_field(), v = random_field();
  double roundtrip = 0, hh = 0, half = 0;
  const auto back = inverse(forward(u));
  const auto minus_hh = -1.0 * hilbert_transform(hilbert_transform(u));
  const double m = mean(u);
  const auto dd = fractional_derivative(fractional_derivative(u, 0.5), 0.5);
  const auto hd = hilbert_transform(spatial_derivative(u, 1));
  const double scale = lp_norm(hd, Norm::Linf);
  for (std::size_t i = 0; i < u.size(); ++i) {
    roundtrip = std::max(roundtrip, std::abs(back[i] - u[i]));
    hh = std::max(hh, std::abs(minus_hh[i] - (u[i] - m)));
    half = std::max(half, std::abs(dd[i] - hd[i]) / scale);
  }
  const double skew = std::abs(inner_product(hilbert_transform(u), v) + inner_product(u, hilbert_transform(v))) /
                      (lp_norm(u, Norm::L2) * lp_norm(v, Norm::L2));
  log("roundtrip " + num(roundtrip) + ", H^2 + (I - mean) " + num(hh) + ", D^1/2 D^1/2 - H d_x (rel) " + num(half) +
      ", skew (rel) " + num(skew));
  const double tol = 1e-12;
  return {roundtrip <= tol && hh <= tol && half <= tol && skew <= tol, "max error " + num(std::max({roundtrip, hh, half, skew}))};
}

// --- 2 ------------------------------------------------------------------------

Outcome cutoff_certification() {
  bool ok = true;
  for (auto [eps, b] : {std::pair{0.1, 0.5}, std::pair{0.2, 1.0}, std::pair{0.05, 0.25}}) {
    const CutoffParams p{eps, b};
    const auto rep = verify_family(p, *default_probe(p));
    // the ramp slope on (3 eps, b - 2 eps), checked here independently of the report
    const CutoffFamily f(p);
    double slope = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double x = 3 * eps + (b - 5 * eps) * i / 200.0;
      slope = std::max(slope, std::abs(f.chi_prime(x) - 1.0 / (b - 3 * eps)));
    }
    bool all = rep.all_passed() && slope <= 1e-8 && std::isfinite(rep.cl_constant_2) && std::isfinite(rep.cl_constant_3);
    std::string failed;
    for (const auto& c : rep.checks)
      if (!c.passed) failed += " " + c.id;
    log("(" + num(eps) + ", " + num(b) + "): " + std::to_string(rep.checks.size()) + " checks, slope dev " + num(slope) +
        ", CL constants " + num(rep.cl_constant_2) + " " + num(rep.cl_constant_3) + (failed.empty() ? "" : ", failed:" + failed));
    ok = ok && all;
  }
  return {ok, "three families certified"};
}

// --- 3 ------------------------------------------------------------------------

Outcome soliton_fidelity() {
  const double L = 100.0, c = 1.0;
  const auto g = Grid::make(1024, L, -L / 2);
  const auto dir = soliton_direction_oracle();
  const auto u0 = RealField::sample(g, [&](double x) { return periodic_soliton(c, L, x, 0.0, 0.0, dir.sigma); });
  const double speed = periodic_soliton_speed(c, L);
  SolverConfig cfg;
  cfg.grid = g;
  cfg.t_end = L / speed;
  cfg.dt = stable_dt(u0, {});
  cfg.snapshot_stride = 1 << 30;
  const auto tr = integrate(u0, cfg, {});
  const auto exact = RealField::sample(g, [&](double x) { return periodic_soliton(c, L, x, cfg.t_end, 0.0, dir.sigma); });
  const double err = lp_norm(tr.snapshots.back().u - exact, Norm::L2) / lp_norm(exact, Norm::L2);
  const double wrong = soliton_residual(c, g, -dir.sigma);
  log("sigma " + std::to_string(dir.sigma) + ", transit T " + num(cfg.t_end) + ", dt " + num(tr.dt) + ", relative L2 error " +
      num(err) + ", wrong-direction residual " + num(wrong));
  return {err <= 1e-6 && wrong >= 0.1, "error " + num(err) + ", wrong-direction residual " + num(wrong)};
}

// --- 4 ------------------------------------------------------------------------

Outcome conservation() {
  const auto g = Grid::make(256, 40.0, -20.0);
  const auto u0 = RealField::sample(g, [](double x) { return std::exp(-x * x); });
  std::vector<double> dts = {0.04, 0.02, 0.01, 0.005}, drift;
  double mass = 0, l2 = 0;
  for (double dt : dts) {
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 1;
    const auto tr = integrate(u0, cfg, {});
    drift.push_back(tr.max_hamiltonian_drift());
    mass = tr.max_mass_drift();
    l2 = tr.max_l2_relative_drift();
    log("dt " + num(dt) + ": |dI1| " + num(mass) + ", |dI2|/I2 " + num(l2) + ", |dI3| " + num(drift.back()));
  }
  double worst = INFINITY;
  std::string orders;
  for (std::size_t i = 0; i + 1 < drift.size(); ++i) {
    const double o = std::log2(drift[i] / drift[i + 1]);
    worst = std::min(worst, o);
    orders += num(o) + " ";
  }
  log("I3 drift orders per halving: " + orders);
  return {mass <= 1e-10 && l2 <= 1e-9 && worst >= 3.5,
          "finest |dI1| " + num(mass) + ", |dI2|/I2 " + num(l2) + ", min I3 order " + num(worst)};
}

// --- 5 ------------------------------------------------------------------------

Outcome energy_identity() {
  const auto g = Grid::make(512, 40.0, -20.0);
  const auto u0 = RealField::sample(g, [](double x) { return std::exp(-x * x); });
  const Window w({2, 0.1, 0.5, 1.0, 0.0});
  const double probe = 0.25;
  std::vector<double> dts = {2e-3, 1e-3, 5e-4}, res;
  for (double dt : dts) {
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = dt;
    cfg.t_end = probe + dt;
    cfg.snapshot_stride = 1;
    std::vector<RealField> last;
    integrate(u0, cfg, {}, [&](const Snapshot& s) {
      last.push_back(s.u);
      if (last.size() > 3) last.erase(last.begin());
    });
    const auto t = energy_identity_residual(last[0], last[1], last[2], probe, dt, w, {}, true);
    res.push_back(t.residual);
    log("dt " + num(dt) + ": residual " + num(t.residual) + " (1/2 dE/dt " + num(t.half_dEdt) + ", A1 " + num(t.a1) +
        ", A2 " + num(t.a2) + ", A3 " + num(t.a3) + ")");
  }
  const double order = cli::fitted_order(dts, res);
  return {order >= 1.9, "fitted residual order " + num(order)};
}

// --- 6, 7, 9: one-sided datum scenarios -----------------------------------------

cli::RunConfig scenario(const std::string& preset, std::size_t n) {
  auto c = cli::load_config("preset:" + preset);
  c.grid.n = n;
  c.sweep = {};
  c.output.fields = cli::FieldDumps::None;
  c.output.plots = false;
  return c;
}

Outcome theorem_property() {
  std::vector<double> sup_e, cum_f;
  for (std::size_t n : {512, 1024, 2048}) {
    const auto r = cli::run_simulation(scenario("theorem1-forward", n));
    if (r.blew_up) return {false, "blow-up at N = " + std::to_string(n)};
    const auto& s = r.windows.front().series;
    sup_e.push_back(s.sup_energy());
    cum_f.push_back(s.back().cum_F_half);
    log("N " + std::to_string(n) + ": sup E2 " + num(sup_e.back()) + ", int F_half " + num(cum_f.back()) + ", int F_eta " +
        num(s.back().cum_F_eta) + ", seam fraction " + num(r.max_seam_fraction));
  }
  const double se = relative_spread(sup_e), sf = relative_spread(cum_f);
  return {se <= 0.1 && sf <= 0.1, "sup E2 spread " + num(se) + ", smoothing spread " + num(sf)};
}

Outcome corollary_property() {
  // window anchored so the tail cut x0 + eps sits at -1, left of the singular point
  std::vector<double> back, fwd;
  for (std::size_t n : {512, 1024, 2048}) {
    for (double t_end : {-0.25, 0.25}) {
      auto c = scenario("corollary-backward", n);
      c.solver.t_end = t_end;
      c.solver.dt = std::copysign(0.002, t_end);
      const auto r = cli::run_simulation(c);
      if (r.blew_up) return {false, "blow-up"};
      (t_end < 0 ? back : fwd).push_back(r.windows.front().series.back().tail);
    }
    log("N " + std::to_string(n) + ": tail at t=-0.25 " + num(back.back()) + ", at t=+0.25 " + num(fwd.back()));
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 0; i + 1 < back.size(); ++i) {
    const double q = back[i + 1] / back[i];
    ratios += num(q) + " ";
    ok = ok && q >= 2.0;
  }
  const double stable = relative_spread(fwd);
  log("backward ratios per doubling: " + ratios + "; forward spread " + num(stable));
  return {ok && stable <= 0.1, "backward ratios " + ratios + "(need >= 2), forward spread " + num(stable)};
}

Outcome inequality_lab() {
  const auto r = run_inequality_suite({});
  bool ok = true;
  for (const auto& rep : r.reports) {
    log(rep.id + ": max " + num(rep.max_ratio) + ", refined " + num(rep.max_ratio_refined) + ", change " +
        num(rep.refinement_change));
    ok = ok && rep.finite && rep.refinement_change <= 0.2;
  }
  log("symbol sup " + num(r.symbol.sup) + " at (" + num(r.symbol.xi_at_sup) + ", " + num(r.symbol.eta_at_sup) +
      "), route gap " + num(r.halfder_route_gap));
  ok = ok && r.symbol.sup >= 0.99 && r.symbol.sup <= 1 + 1e-9 && r.halfder_route_gap <= 1e-10;
  return {ok, std::to_string(r.reports.size()) + " ratio families, symbol sup " + num(r.symbol.sup) + ", route gap " +
                  num(r.halfder_route_gap)};
}

Outcome mollification_ladder() {
  std::vector<double> taus = {4, 2, 1, 0.5}, sup_e;
  std::vector<RealField> finals;
  for (double tc : taus) {
    auto c = scenario("mollification-ladder", 1024);
    cli::apply_sweep_value(c, "tau_cells", tc);
    const auto grid = cli::make_grid(c);
    const auto u0 = make_datum(cli::resolve_datum(c, *grid), grid);
    auto cfg = cli::make_solver_config(c, u0);
    cfg.keep_fields = true;
    const Window w(c.windows.front());
    DiagnosticSeries s;
    const auto tr = integrate(u0, cfg, c.pde, [&](const Snapshot& snap) { s.append(diagnose(snap.u, w, snap.t)); });
    finals.push_back(tr.snapshots.back().u);
    sup_e.push_back(s.sup_energy());
  }
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) diffs.push_back(sobolev_norm(finals[i] - finals[i + 1], 1.5));
  bool mono = true;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) mono = mono && diffs[i + 1] < diffs[i];
  // boundedness: energy increments under halving must shrink, so the limit is finite
  std::vector<double> inc;
  for (std::size_t i = 0; i + 1 < sup_e.size(); ++i) inc.push_back(sup_e[i + 1] - sup_e[i]);
  bool shrinking = true;
  for (std::size_t i = 0; i + 1 < inc.size(); ++i) shrinking = shrinking && std::abs(inc[i + 1]) < std::abs(inc[i]);
  const double q = std::abs(inc.back() / inc[inc.size() - 2]);
  const double limit = sup_e.back() + std::abs(inc.back()) * q / (1 - q);
  for (std::size_t i = 0; i < taus.size(); ++i) log("tau " + num(taus[i]) + "h: sup E2 " + num(sup_e[i]));
  log("H^3/2 differences (4h|2h, 2h|h, h|h/2): " + num(diffs[0]) + " " + num(diffs[1]) + " " + num(diffs[2]));
  log("extrapolated sup E2 bound " + num(limit));
  return {mono && shrinking && q < 1, "differences monotone: " + std::string(mono ? "yes" : "no") + ", sup E2 bound " + num(limit)};
}

Outcome determinism() {
  auto c = cli::load_config("preset:theorem1-forward");
  c.output.plots = false;
  std::vector<std::string> csv;
  for (const char* name : {"run_a", "run_b"}) {
    const auto dir = g_work / "determinism" / name;
    fs::remove_all(dir);
    if (cli::cmd_simulate(c, {dir, true}) != cli::kExitOk) return {false, "simulate failed"};
    std::ifstream in(dir / "diagnostics.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    csv.push_back(ss.str());
  }
  log("diagnostics.csv sizes " + std::to_string(csv[0].size()) + " and " + std::to_string(csv[1].size()) + " bytes");
  return {!csv[0].empty() && csv[0] == csv[1], csv[0] == csv[1] ? "byte-identical" : "outputs differ"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> only;
  std::string work = g_work.string();
  app.add_option("--criterion,-c", only, "Criterion numbers to run (default: all)");
  app.add_option("--work", work, "Scratch directory");
  CLI11_PARSE(app, argc, argv);
  g_work = work;
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  const std::vector<Criterion> all = {
      {1, "spectral algebra", 1, spectral_algebra},
      {2, "cut-off certification", 10, cutoff_certification},
      {3, "soliton fidelity", 30, soliton_fidelity},
      {4, "conservation", 60, conservation},
      {5, "energy identity order", 120, energy_identity},
      {6, "forward windowed energy stability", 300, theorem_property},
      {7, "backward tail growth", 300, corollary_property},
      {8, "inequality lab", 120, inequality_lab},
      {9, "mollification ladder", 300, mollification_ladder},
      {10, "determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    std::printf("criterion %d (%s)\n", c.id, c.name);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.passed && in_time;
    std::printf("[%s] criterion %d: %s; %.2f s of %.0f s\n", pass ? "PASS" : "FAIL", c.id, o.detail.c_str(), secs,
                c.budget_seconds);
    failures += !pass;
  }
  return failures == 0 ? 0 : 1;
}
