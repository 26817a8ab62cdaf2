#include <benchmark/benchmark.h>

#include "qsusy/oracle.hpp"
#include "qsusy/susy.hpp"
#include "qsusy/verification.hpp"

using namespace qsusy;

static void BM_BuildLadder(benchmark::State& state) {
  const DeformationParams p = validate_params(0.5, 1, 1, 1);
  const TruncatedBasis b = build_basis(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ladder_matrices(p, b));
}
BENCHMARK(BM_BuildLadder)->Arg(30)->Arg(100)->Arg(300);

static void BM_Hamiltonians(benchmark::State& state) {
  const TruncatedBasis b = build_basis(state.range(0));
  const LadderMatrices m = build_ladder_matrices(validate_params(0.5, 1, 1, 1), b);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonians(build_charges(m), b));
}
BENCHMARK(BM_Hamiltonians)->Arg(30)->Arg(100);

// words of the form a1^k (A1)^k: every letter has to be pushed through to the vacuum
static void BM_ApplyWord(benchmark::State& state) {
  const DeformationParams p = validate_params(Rational(2, 3), 1, -1, 1);
  Word w(static_cast<std::size_t>(state.range(0)), Letter::A1);
  w.insert(w.end(), static_cast<std::size_t>(state.range(0)), Letter::A1Dag);
  for (auto _ : state) benchmark::DoNotOptimize(apply_word(w, ExactStateVector::vacuum(), p));
}
BENCHMARK(BM_ApplyWord)->Arg(2)->Arg(4)->Arg(8);

static void BM_Obstruction(benchmark::State& state) {
  const LadderMatrices m = build_ladder_matrices(validate_params(0.5, 1, 1, 1), build_basis(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(number_operator_obstruction(m, 4));
}
BENCHMARK(BM_Obstruction)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
