#include <benchmark/benchmark.h>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"
#include "csg/value_iteration.hpp"

namespace {

using namespace csg;

void BM_SolveTriMatrix(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const MatrixGame game = build_tri_matrix(0, 1, Rational(1, 2), m);
  for (auto _ : state) {
    auto sol = solve_matrix_game(game);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_SolveTriMatrix)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ExactDuelValues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto table = exact_duel_values(n, m, 0);
    benchmark::DoNotOptimize(table.values);
  }
}
BENCHMARK(BM_ExactDuelValues)->Args({1, 2})->Args({2, 2})->Args({3, 3})->Args({4, 4});

void BM_ValueIterationDuel(benchmark::State& state) {
  const GameStructure g = purgatory_duel(2, 2);
  ValueIterationOptions opts;
  opts.budget = static_cast<int>(state.range(0));
  opts.max_bits = 0;
  for (auto _ : state) {
    auto trace = value_iterate(g, opts);
    benchmark::DoNotOptimize(trace.steps.back());
  }
}
BENCHMARK(BM_ValueIterationDuel)->Arg(4)->Arg(8)->Arg(16);

void BM_BestResponseSafetyDuel(benchmark::State& state) {
  const Rational dmin(1, 216);
  const GameStructure g = safety_duel(static_cast<int>(state.range(0)), dmin);
  StationaryStrategy s1, s2;
  s1.player = 1;
  s2.player = 2;
  const Rational inv = Rational(1) / dmin;
  const Rational den = Rational(2) + inv + dmin;
  for (int sid = 1; sid <= 2; ++sid) {
    s1.choice[sid] = Distribution::make(
        {{0, (Rational(1) + inv) / den}, {1, (Rational(1) + dmin) / den}});
    s2.choice[sid] = Distribution::make(
        {{0, (Rational(1) + dmin) / den}, {1, (Rational(1) + inv) / den}});
  }
  const StrategyProfile profile = StrategyProfile::of(std::vector<StationaryStrategy>{s1, s2});
  for (auto _ : state) {
    auto dev = best_deviation_payoff(g, profile, 2, 0);
    benchmark::DoNotOptimize(dev.first);
  }
}
BENCHMARK(BM_BestResponseSafetyDuel)->Arg(1)->Arg(2)->Arg(3);

void BM_AbsorptionChain(benchmark::State& state) {
  const GameStructure g = purgatory_duel(static_cast<int>(state.range(0)), 2);
  const DuelValueTable table = exact_duel_values(static_cast<int>(state.range(0)), 2, 0);
  const StrategyProfile profile =
      StrategyProfile::of(std::vector<StationaryStrategy>{table.sigma1, table.sigma2});
  const MarkovChain mc = induce_chain(g, profile);
  const std::vector<int> target = {2 * static_cast<int>(state.range(0)) + 1};
  for (auto _ : state) {
    auto probs = absorption_probabilities(mc, target);
    benchmark::DoNotOptimize(probs);
  }
}
BENCHMARK(BM_AbsorptionChain)->Arg(1)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
