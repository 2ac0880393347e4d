#include <benchmark/benchmark.h>

#include <string>

#include "jacobi/analysis.hpp"
#include "jacobi/charpoly.hpp"
#include "jacobi/deviation.hpp"
#include "jacobi/real_algebra.hpp"

using namespace jacobi;

namespace {

std::string data(const std::string& name) { return std::string(JACOBI_DATA_DIR) + "/" + name; }

void BM_CountBrusselator(benchmark::State& state) {
  const auto sys = load_system_file(data("brusselator.ode"));
  const auto mu = sys.bind_parameters({{"a", Rational(1)}, {"b", Rational(2)}});
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_count(sys, mu).stable_count);
}
BENCHMARK(BM_CountBrusselator);

void BM_CountCdcWee1(benchmark::State& state) {
  const auto sys = load_system_file(data(state.range(0) == 1 ? "cdc2wee1_g11.ode" : "cdc2wee1_g12.ode"));
  const auto mu = sys.bind_parameters({{"k2", Rational(1)}});
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_count(sys, mu).stable_count);
}
BENCHMARK(BM_CountCdcWee1)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LexGroebnerLorenzStenflo(benchmark::State& state) {
  const auto sys = load_system_file(data("lorenz_stenflo.ode"));
  const auto s = sys.specialize(
      sys.bind_parameters({{"a", Rational(-1)}, {"b", Rational(-1)}, {"c", Rational(26)}, {"d", ratio(3, 2)}}));
  const auto fp = fixed_point_system(s);
  for (auto _ : state) benchmark::DoNotOptimize(lex_groebner_basis(fp.equations, s.state_vars()).size());
}
BENCHMARK(BM_LexGroebnerLorenzStenflo)->Unit(benchmark::kMillisecond);

void BM_SymbolicSquareCharPoly(benchmark::State& state) {
  const auto sys = load_system_file(data("lorenz_stenflo.ode"));
  const auto j2 = matrix_square(jacobian(sys));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(j2).coeffs.size());
}
BENCHMARK(BM_SymbolicSquareCharPoly)->Unit(benchmark::kMillisecond);

void BM_ScanBrusselator(benchmark::State& state) {
  const auto sys = load_system_file(data("brusselator.ode"));
  const std::vector<ScanAxis> axes{{"a", ratio(1, 4), Rational(4), 15}, {"b", ratio(1, 4), Rational(4), 15}};
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_parameters(sys, axes, {}, {}, workers).grid.size());
}
BENCHMARK(BM_ScanBrusselator)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DeviationBrusselator(benchmark::State& state) {
  const auto sys = load_system_file(data("brusselator.ode"));
  const DeviationSetup setup{sys, sys.bind_parameters({{"a", Rational(3)}, {"b", Rational(1)}}), {1.0, 1.0 / 3}, {1.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_deviation(setup).samples.size());
}
BENCHMARK(BM_DeviationBrusselator)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
