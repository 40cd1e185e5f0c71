#pragma once

#include <map>
#include <optional>

#include "csg/game.hpp"
#include "csg/matrix_game.hpp"
#include "csg/strategy.hpp"

namespace csg {

/// State id -> exact value.
using ValueVector = std::map<int, Rational>;

enum class StopReason { BudgetExhausted, GapBelowThreshold, FixpointReached };

const char* stop_reason_str(StopReason r);

struct IterationTrace {
  std::vector<std::pair<int, ValueVector>> steps;  // (t, values), t = 0..T
  StopReason stop_reason = StopReason::BudgetExhausted;

  const ValueVector& last() const;
};

/// One-shot matrix game at a non-absorbing state of a zero-sum game: rows are
/// player-1 actions, columns player-2 actions (both in canonical order), and
/// entry (i, j) is the expectation of v over the successor distribution.
MatrixGame local_matrix(const GameStructure& g, int state, const ValueVector& v);

struct ValueIterationOptions {
  int budget = 100;
  std::optional<Rational> gap_threshold;  // stall detector, not a certificate
  std::size_t max_bits = 1'000'000;       // 0 = unlimited; exceeding stops with BudgetExhausted
};

/// Everett value iteration from the indicator of the reachability targets.
/// Every recorded vector is a certified lower bound on the value vector, and
/// the trace is coordinatewise monotone. When a step would exceed max_bits it
/// is discarded and the trace ends with BudgetExhausted.
IterationTrace value_iterate(const GameStructure& g, const ValueIterationOptions& opts);

/// Per-state optimal strategy of the local matrix games under valuation v.
/// At the exact value vector this is optimal for the safety player; for the
/// reachability player it is a candidate to be certified by best response.
StationaryStrategy greedy_strategy_from_values(const GameStructure& g, const ValueVector& v,
                                               int player);

/// max_s |val(A^s[v]) - v(s)| over non-absorbing states; exactly 0 for any
/// fixpoint of the value mapping (in particular the exact value vector).
Rational fixpoint_residual(const GameStructure& g, const ValueVector& v);

}  // namespace csg
