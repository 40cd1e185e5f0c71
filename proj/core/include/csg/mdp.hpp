#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "csg/game.hpp"
#include "csg/strategy.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

/// One-player stochastic game obtained by fixing every other player's
/// strategy. For player-stationary profiles the states are (state, alive set)
/// product states with synthesized ids; product_origin maps them back.
struct InducedMDP {
  std::vector<StateInfo> states;
  int player = 0;  // the free player
  std::map<int, std::vector<int>> actions;
  std::map<std::pair<int, int>, Distribution> transition;  // (state, action) -> dist
  Objective objective;
  std::map<int, std::pair<int, AliveMask>> product_origin;  // empty unless product-built

  const std::vector<int>& actions_at(int state) const;
  const Distribution& dist(int state, int action) const;
  bool is_product() const { return !product_origin.empty(); }
};

struct MarkovChain {
  std::vector<StateInfo> states;
  std::map<int, Distribution> transition;
  std::map<int, std::pair<int, AliveMask>> product_origin;

  const Distribution& dist(int state) const;
};

using PositionalPolicy = std::map<int, int>;

struct ReplacementSet {
  std::vector<std::tuple<int, int, Distribution>> items;  // (state, action, new dist)
};

/// Fixes every player's strategy. Player-stationary profiles induce the chain
/// over (state, alive set) pairs reachable from the per-state initial alive
/// sets; unreachable product states are pruned.
MarkovChain induce_chain(const GameStructure& g, const StrategyProfile& profile);

/// Fixes all players but one. The profile may or may not contain a strategy
/// for the free player; if present it is ignored.
InducedMDP induce_mdp(const GameStructure& g, const StrategyProfile& profile, int free_player);

/// Exact probability of ever reaching the target set, per state. Closed
/// recurrent classes disjoint from the target contribute probability 0; the
/// transient part is solved as one exact linear system.
ValueVector absorption_probabilities(const MarkovChain& mc, const std::vector<int>& target);

struct MdpSolution {
  ValueVector values;  // the controller's objective value (reach or safety probability)
  PositionalPolicy policy;
};

/// Exact optimum of the induced MDP by policy iteration with exact
/// linear-system evaluation. Safety objectives are solved as
/// 1 - (minimal reachability of the complement). Deterministic: the initial
/// policy and all tie-breaks are lexicographic.
MdpSolution optimal_value(const InducedMDP& mdp);

/// Returns the MDP with the listed (state, action) distributions replaced.
InducedMDP apply_replacement_set(const InducedMDP& mdp, const ReplacementSet& q);

/// Checks the replacement-set premise sum_s delta(s_i,a_i)(s) vbar^t_s <=
/// sum_s delta_i(s) vbar^t_s on the finite-horizon value vectors of a
/// safety-objective MDP for t = 0..horizon. Returns the first failing t, or
/// nullopt when verified up to the horizon (this is "verified up to T",
/// never a proof for all t).
std::optional<int> verify_replacement_premise(const InducedMDP& mdp, const ReplacementSet& q,
                                              int horizon);

/// Probability that `player` wins the game from `start` under the profile.
Rational profile_payoff(const GameStructure& g, const StrategyProfile& profile, int player,
                        int start);

/// Payoff of `player` against the rest of the profile when the player
/// deviates optimally; the value at `start` together with a positional
/// witness on the (possibly product) deviation MDP.
std::pair<Rational, PositionalPolicy> best_deviation_payoff(const GameStructure& g,
                                                            const StrategyProfile& profile,
                                                            int player, int start);

}  // namespace csg
