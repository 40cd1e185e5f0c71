#include "csg/value_iteration.hpp"

namespace csg {

const char* stop_reason_str(StopReason r) {
  switch (r) {
    case StopReason::BudgetExhausted: return "budget_exhausted";
    case StopReason::GapBelowThreshold: return "gap_below_threshold";
    case StopReason::FixpointReached: return "fixpoint_reached";
  }
  return "?";
}

const ValueVector& IterationTrace::last() const {
  if (steps.empty()) throw DomainError("empty iteration trace");
  return steps.back().second;
}

MatrixGame local_matrix(const GameStructure& g, int state, const ValueVector& v) {
  if (!is_zero_sum_reachability(g))
    throw DomainError("local matrix games are defined for zero-sum reachability games");
  if (g.is_absorbing(state))
    throw DomainError("local matrix requested at absorbing state " + g.state(state).name);
  const auto& rows = g.actions(state, 1);
  const auto& cols = g.actions(state, 2);
  MatrixGame m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const Distribution& d = g.transition(state, {rows[i], cols[j]});
      Rational e;
      for (const auto& [succ, p] : d.entries()) {
        const auto it = v.find(succ);
        if (it == v.end())
          throw DomainError("value vector missing state " + std::to_string(succ));
        e += p * it->second;
      }
      m.at(i, j) = e;
    }
  }
  return m;
}

IterationTrace value_iterate(const GameStructure& g, const ValueIterationOptions& opts) {
  if (!is_zero_sum_reachability(g))
    throw DomainError("value iteration is defined for zero-sum reachability games");
  if (opts.budget < 0) throw DomainError("negative iteration budget");
  const auto& targets = g.objectives[0];

  ValueVector v;
  for (const auto& s : g.states) v[s.id] = targets.contains(s.id) ? Rational(1) : Rational(0);

  IterationTrace trace;
  trace.steps.emplace_back(0, v);
  trace.stop_reason = StopReason::BudgetExhausted;

  for (int t = 1; t <= opts.budget; ++t) {
    ValueVector next = v;
    for (const auto& s : g.states) {
      if (targets.contains(s.id) || s.absorbing) continue;
      next[s.id] = matrix_game_value(local_matrix(g, s.id, v));
    }
    if (opts.max_bits > 0) {
      bool over = false;
      for (const auto& [sid, val] : next)
        if (val.bit_size() > opts.max_bits) over = true;
      if (over) {
        trace.stop_reason = StopReason::BudgetExhausted;
        return trace;
      }
    }
    Rational step_gap;
    for (const auto& [sid, val] : next) step_gap = max(step_gap, val - v.at(sid));
    trace.steps.emplace_back(t, next);
    if (next == v) {
      trace.stop_reason = StopReason::FixpointReached;
      return trace;
    }
    if (opts.gap_threshold && step_gap < *opts.gap_threshold) {
      trace.stop_reason = StopReason::GapBelowThreshold;
      return trace;
    }
    v = std::move(next);
  }
  return trace;
}

StationaryStrategy greedy_strategy_from_values(const GameStructure& g, const ValueVector& v,
                                               int player) {
  if (player != 1 && player != 2) throw DomainError("greedy extraction needs player 1 or 2");
  StationaryStrategy out;
  out.player = player;
  for (const auto& s : g.states) {
    if (s.absorbing) continue;
    const auto& legal = g.actions(s.id, player);
    if (legal.size() == 1) continue;
    const MatrixSolution sol = solve_matrix_game(local_matrix(g, s.id, v));
    const Distribution& by_index = player == 1 ? sol.row_strategy : sol.col_strategy;
    std::vector<Distribution::Entry> entries;
    for (const auto& [idx, p] : by_index.entries()) entries.emplace_back(legal[idx], p);
    out.choice[s.id] = Distribution::make(std::move(entries));
  }
  return out;
}

Rational fixpoint_residual(const GameStructure& g, const ValueVector& v) {
  Rational worst;
  for (const auto& s : g.states) {
    if (s.absorbing) continue;
    const Rational diff = (matrix_game_value(local_matrix(g, s.id, v)) - v.at(s.id)).abs();
    worst = max(worst, diff);
  }
  return worst;
}

}  // namespace csg
