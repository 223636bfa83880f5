#include <benchmark/benchmark.h>

#include <cmath>

#include "boprop/cutoff.hpp"
#include "boprop/datum.hpp"
#include "boprop/diagnostics.hpp"
#include "boprop/evolution.hpp"
#include "boprop/inequalities.hpp"
#include "boprop/spectral.hpp"

using namespace boprop;

namespace {

RealField gaussian(std::size_t n) {
  const auto g = Grid::make(n, 200.0, -100.0);
  return RealField::sample(g, [](double x) { return std::exp(-x * x); });
}

void BM_ForwardInverse(benchmark::State& st) {
  const auto u = gaussian(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(inverse(forward(u)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(2)->Range(256, 8192)->Complexity(benchmark::oNLogN);

void BM_HalfDerivative(benchmark::State& st) {
  const auto u = gaussian(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fractional_derivative(u, 0.5));
}
BENCHMARK(BM_HalfDerivative)->Arg(1024)->Arg(4096);

void BM_Step(benchmark::State& st) {
  const auto u = gaussian(static_cast<std::size_t>(st.range(0)));
  const auto scheme = st.range(1) == 0 ? Scheme::ETDRK4 : Scheme::IFRK4;
  const Stepper s({}, u.grid_ptr(), 1e-3, scheme, true);
  auto v = s.project(u);
  for (auto _ : st) {
    s.advance(v);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetLabel(to_string(scheme));
}
BENCHMARK(BM_Step)->Args({1024, 0})->Args({1024, 1})->Args({4096, 0});

void BM_CutoffSample(benchmark::State& st) {
  const auto g = Grid::make(static_cast<std::size_t>(st.range(0)), 200.0, -100.0);
  const CutoffFamily f({0.5, 2.5});
  double offset = 0.0;
  for (auto _ : st) {
    // fresh offsets defeat the sample cache
    benchmark::DoNotOptimize(f.sample(*g, offset));
    offset += 1e-3;
  }
}
BENCHMARK(BM_CutoffSample)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Diagnose(benchmark::State& st) {
  const auto u = gaussian(static_cast<std::size_t>(st.range(0)));
  const Window w({2, 0.5, 2.5, 1.0, 0.0});
  w.at(u.grid(), 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(diagnose(u, w, 0.1));
}
BENCHMARK(BM_Diagnose)->Arg(1024)->Arg(4096);

void BM_MollifiedDatum(benchmark::State& st) {
  const auto g = Grid::make(1024, 200.0, -100.0);
  const DatumSpec d = mollified({OneSidedDatum{1.3, 0.0, 1.0, 4.0, 0.5}}, g->spacing());
  for (auto _ : st) benchmark::DoNotOptimize(make_datum(d, g));
}
BENCHMARK(BM_MollifiedDatum)->Unit(benchmark::kMillisecond);

void BM_HalfderCommutator(benchmark::State& st) {
  const auto g = Grid::make(static_cast<std::size_t>(st.range(0)), 32.0, -16.0);
  const auto h = family_member(FunctionKind::GaussianBumps, 1, 0, 0, g);
  const auto f = family_member(FunctionKind::RandomTrig, 1, 0, 1, g);
  for (auto _ : st) benchmark::DoNotOptimize(commutator_halfder(h, f));
}
BENCHMARK(BM_HalfderCommutator)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
