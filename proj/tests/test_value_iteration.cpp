#include <doctest.h>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "csg/value_iteration.hpp"
#include "oracles.hpp"

using namespace csg;

namespace {

ValueVector indicator_targets(const GameStructure& g) {
  ValueVector v;
  for (const auto& s : g.states)
    v[s.id] = g.objectives[0].contains(s.id) ? Rational(1) : Rational(0);
  return v;
}

}  // namespace

TEST_CASE("local matrix of Purgatory(1,2) under the target indicator") {
  const GameStructure g = purgatory(1, 2);
  const MatrixGame m = local_matrix(g, 0, indicator_targets(g));
  CHECK(m.at(0, 0) == Rational(1));
  CHECK(m.at(0, 1) == Rational(0));
  CHECK(m.at(1, 0) == Rational(0));
  CHECK(m.at(1, 1) == Rational(1));
}

TEST_CASE("duel local matrix is the conjugate of the tri-band form, same value") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);
  const MatrixGame local = local_matrix(g, 0, table.values);  // v1_1
  const MatrixGame tri = build_tri_matrix(0, 1, Rational(1, 2), 2);
  CHECK(local == tri.reverse_both());
  CHECK(solve_matrix_game(local).value == solve_matrix_game(tri).value);
  // with every successor valued 0 the local matrix is identically zero
  ValueVector zeros;
  for (const auto& s : g.states) zeros[s.id] = Rational(0);
  const MatrixGame z = local_matrix(g, 1, zeros);
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) CHECK(z.at(i, j) == Rational(0));
}

TEST_CASE("local matrix domain errors") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);
  CHECK_THROWS_AS(local_matrix(g, 3, table.values), DomainError);  // absorbing top
  CHECK_THROWS_AS(local_matrix(safety_duel(1, Rational(1, 216)), 1, table.values), DomainError);
}

TEST_CASE("value iteration on Purgatory(1,2) follows t/(t+1)") {
  const GameStructure g = purgatory(1, 2);
  ValueIterationOptions opts;
  opts.budget = 20;
  const IterationTrace trace = value_iterate(g, opts);
  REQUIRE(trace.steps.size() == 21);
  for (int t = 0; t <= 20; ++t) {
    CHECK(trace.steps[t].first == t);
    CHECK(trace.steps[t].second.at(0) == Rational(t, t + 1));
    CHECK(trace.steps[t].second.at(1) == Rational(1));  // top
    CHECK(trace.steps[t].second.at(2) == Rational(0));  // bot
  }
  CHECK(trace.stop_reason == StopReason::BudgetExhausted);
}

TEST_CASE("duel traces stay below the exact values and are monotone") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);
  ValueIterationOptions opts;
  opts.budget = 14;
  const IterationTrace trace = value_iterate(g, opts);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& [t, v] = trace.steps[i];
    CHECK(v.at(2) <= Rational(1, 2));  // vs never exceeds 1/2
    for (const auto& [sid, val] : v) {
      CHECK(val <= table.values.at(sid));
      if (i > 0) CHECK(val >= trace.steps[i - 1].second.at(sid));
    }
  }
}

TEST_CASE("stop reasons") {
  // A game that hits its fixpoint: one live state that moves straight to top.
  GameStructure g = purgatory(1, 1);  // single action; v1 -> top deterministically
  ValueIterationOptions opts;
  opts.budget = 10;
  const IterationTrace trace = value_iterate(g, opts);
  CHECK(trace.stop_reason == StopReason::FixpointReached);
  CHECK(trace.last().at(0) == Rational(1));

  const GameStructure duel = purgatory_duel(1, 2);
  ValueIterationOptions tiny;
  tiny.budget = 50;
  tiny.max_bits = 8;  // forces an early controlled stop
  const IterationTrace capped = value_iterate(duel, tiny);
  CHECK(capped.stop_reason == StopReason::BudgetExhausted);
  CHECK(capped.steps.size() < 51);

  ValueIterationOptions gap;
  gap.budget = 1000;
  gap.gap_threshold = Rational(1, 100);
  const IterationTrace stalled = value_iterate(purgatory(1, 2), gap);
  CHECK(stalled.stop_reason == StopReason::GapBelowThreshold);
  // the step just appended improved by less than the threshold
  const auto& steps = stalled.steps;
  REQUIRE(steps.size() >= 2);
  const auto& last = steps[steps.size() - 1].second;
  const auto& prev = steps[steps.size() - 2].second;
  Rational inc;
  for (const auto& [sid, v] : last) inc = max(inc, v - prev.at(sid));
  CHECK(inc < Rational(1, 100));
}

TEST_CASE("fixpoint residual is zero exactly at the value vector") {
  const GameStructure g = purgatory_duel(2, 2);
  const DuelValueTable table = exact_duel_values(2, 2);
  CHECK(fixpoint_residual(g, table.values) == Rational(0));
  ValueVector off = table.values;
  off[0] += Rational(1, 100);
  CHECK(fixpoint_residual(g, off) != Rational(0));
}

TEST_CASE("greedy extraction at the exact table reproduces the table strategies") {
  const GameStructure g = purgatory_duel(2, 2);
  const DuelValueTable table = exact_duel_values(2, 2);
  const StationaryStrategy s2 = greedy_strategy_from_values(g, table.values, 2);
  CHECK(s2.player == 2);
  for (const auto& [sid, d] : table.sigma2.choice) CHECK(s2.at(g, sid) == d);
  // single-action states are pure
  CHECK(s2.at(g, 4).is_pure());  // vs
}

TEST_CASE("greedy strategies: safety gap 0 at the table, reach gap bounded by the residue") {
  for (const auto& [n, m] : {std::pair{1, 2}, std::pair{2, 2}}) {
    const GameStructure g = purgatory_duel(n, m);
    const DuelValueTable table = exact_duel_values(n, m);
    const StationaryStrategy s2 = greedy_strategy_from_values(g, table.values, 2);
    CHECK(optimality_gap(g, 2, s2, table.values).max_gap() == Rational(0));
    ValueIterationOptions opts;
    opts.budget = 6;
    const IterationTrace trace = value_iterate(g, opts);
    for (int t = 2; t <= 6; t += 2) {
      const ValueVector& v = trace.steps[t].second;
      const StationaryStrategy s1 = greedy_strategy_from_values(g, v, 1);
      const GapReport gaps = optimality_gap(g, 1, s1, table.values);
      // the candidate's measured shortfall never exceeds value - vbar^t
      for (const auto& e : gaps.entries) CHECK(e.gap <= table.values.at(e.state) - v.at(e.state));
    }
  }
}
