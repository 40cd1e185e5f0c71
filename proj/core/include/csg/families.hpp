#pragma once

#include <string>

#include "csg/game.hpp"
#include "csg/strategy.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

/// Purgatory(n, m): states v1..vn, top, bot. At v_j the escapee (player 1)
/// guesses against the hidden number of the guard (player 2): a1 > a2 restarts
/// at v1, a1 < a2 loses to bot, a1 = a2 advances (v_{n+1} = top). Player 1 has
/// Reach {top}.
GameStructure purgatory(int n, int m);

/// Purgatory Duel(n, m): states v1_1..v1_n, v2_1..v2_n, vs, top, bot; at
/// v^i_j, a1 > a2 goes to vs, a1 < a2 to v^i_0, equality advances, with
/// v^1_0 = v^2_{n+1} = bot and v^2_0 = v^1_{n+1} = top; vs flips a fair coin
/// between v1_1 and v2_1. Player 1 has Reach {top}.
GameStructure purgatory_duel(int n, int m);

/// 3-state Purgatory Duel: one live state vs_p with m^2 pair actions per
/// player (ordered (1,1),(1,2),...,(m,m)) and absorbing top_p / bot_p. Each
/// transition is a two-point uniform picked componentwise from the nine-case
/// comparison table.
GameStructure three_state_duel(int m);

/// Same game restricted to R1 = {(i,j) : i=1 or j=1} for player 1 and
/// R2 = {(i,j) : i=m or j=m} for player 2 (2m-1 actions each).
GameStructure restricted_three_state_duel(int m);

/// Two-player all-safety family with n = 4c+3 states and patience forced up
/// to delta_min^{-(n-3)/6}. Player 1 avoids bot, player 2 avoids top.
/// Accepts 0 < delta_min <= 1/216.
GameStructure safety_duel(int c, const Rational& dmin);

/// Exact values of every Purgatory Duel state plus the canonical optimal
/// strategy recorded for each player (solved from the per-state local matrix
/// games at the exact values, hence optimal in the generated game).
struct DuelValueTable {
  int n = 0, m = 0;
  ValueVector values;
  StationaryStrategy sigma1, sigma2;
};

/// Backward recursion v^1_n .. v^1_1 over the tri-band closed family, with
/// v^2_j = 1 - v^1_j and val(vs) = 1/2; the table is re-certified against the
/// fixpoint residual before it is returned. Rationals are capped at max_bits
/// bits (0 = unlimited); exceeding the cap raises a DomainError naming the
/// offending size.
DuelValueTable exact_duel_values(int n, int m, std::size_t max_bits = 1'000'000);

/// Marginal projection of a 3-state-duel strategy onto Purgatory Duel(1, m),
/// and the canonical product lift in the other direction. The 3-state game's
/// action pairs are indexed in the reversed order relative to the duel's
/// actions, so the marginals compose with the index reversal a -> m+1-a;
/// project(lift(s)) == s.
StationaryStrategy project_strategy(const StationaryStrategy& tau, int m);
StationaryStrategy lift_strategy(const StationaryStrategy& sigma, int m);

struct FamilySpec {
  std::string name;  // purgatory | purgatory-duel | three-state-duel |
                     // restricted-three-state-duel | safety-duel
  int n = 0, m = 0, c = 0;
  Rational delta_min;
};

GameStructure generate_family(const FamilySpec& spec);

/// Recognizes a game generated by purgatory_duel and returns (n, m).
std::pair<int, int> duel_shape(const GameStructure& g);

}  // namespace csg
