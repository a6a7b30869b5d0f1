#include <benchmark/benchmark.h>

#include "splice/symalg.hpp"
#include "splice/torsion_rational.hpp"
#include "splice/verify.hpp"

namespace {

namespace v = splice::verify;
using splice::symalg::parse_rational;

void BM_RatFnProduct(benchmark::State& state) {
  const auto a = parse_rational("(t_a^3*t_b - t_a^-1 + 2*t_b^2)/(t_a^2 - t_b)");
  const auto b = parse_rational("(t_a - t_b^-2)/(t_a^3 - t_a^-1*t_b + 1)");
  for (auto _ : state) benchmark::DoNotOptimize(a * b + b);
}
BENCHMARK(BM_RatFnProduct);

void BM_Gcd(benchmark::State& state) {
  const auto f = parse_rational("(t_a - t_b)^3*(t_a*t_c + 2)^2*(t_b^2 - t_c + 1)").numerator();
  const auto g = parse_rational("(t_a - t_b)^2*(t_a*t_c + 2)*(t_c^3 - t_a)").numerator();
  for (auto _ : state) benchmark::DoNotOptimize(splice::symalg::gcd(f, g));
}
BENCHMARK(BM_Gcd);

void BM_Cable(benchmark::State& state) {
  const auto tilde = splice::link::tilde();
  for (auto _ : state) benchmark::DoNotOptimize(splice::engine::cable(tilde, "c", 5, -2, 3));
}
BENCHMARK(BM_Cable);

void BM_TorsionWitness(benchmark::State& state) {
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto w = splice::torsion::random_witness(rng);
    benchmark::DoNotOptimize(splice::torsion::multiplicativity_check(w).holds);
  }
}
BENCHMARK(BM_TorsionWitness);

v::SuiteOptions options(std::int64_t parallel, std::size_t trials) {
  v::SuiteOptions o;
  o.execution = parallel != 0 ? v::Execution::Parallel : v::Execution::Serial;
  o.expressions = o.witnesses = o.complexes = trials;
  return o;
}

// Argument 0 runs the serial reference, 1 the OpenMP runner.
void BM_SymmetrySuite(benchmark::State& state) {
  const auto catalog = splice::link::builtin_catalog();
  const auto o = options(state.range(0), 60);
  for (auto _ : state) benchmark::DoNotOptimize(v::symmetry_suite(catalog, o).passed);
}
BENCHMARK(BM_SymmetrySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TorsionSuite(benchmark::State& state) {
  const auto o = options(state.range(0), 200);
  for (auto _ : state) benchmark::DoNotOptimize(v::torsion_multiplicativity(o).passed);
}
BENCHMARK(BM_TorsionSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
