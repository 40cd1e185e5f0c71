#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "csg/families.hpp"
#include "csg/mdp.hpp"
#include "csg/strategy.hpp"

namespace csg {

/// (patience, roundedness) over all choice distributions of the strategy.
std::pair<Rational, Integer> strategy_patience(const StationaryStrategy& s);
std::pair<Rational, Integer> strategy_patience(const PlayerStationaryStrategy& s);
std::pair<Rational, Integer> profile_patience(const StrategyProfile& p);

/// Mirror of a Purgatory Duel strategy: the other player plays at v^i'_j what
/// this strategy plays at the opposite side's state, with the action index
/// reversed (a -> m+1-a). The reversal is what makes the duel's plays map
/// onto each other with top and bot exchanged; mirroring twice is the
/// identity. Rejects games not generated by purgatory_duel.
StationaryStrategy mirror_strategy(const GameStructure& duel, const StationaryStrategy& s);

struct GapEntry {
  int player = 0;
  int state = 0;
  Rational claimed;     // the value the strategy/profile claims for this player
  Rational best_reply;  // certified by an exact best-response solve
  Rational gap;         // max(0, improvement available to the deviating side)
};

struct GapReport {
  std::vector<GapEntry> entries;
  std::map<int, PositionalPolicy> witnesses;  // player -> best-reply policy

  Rational max_gap() const;
  const GapEntry& at(int player, int state) const;
};

/// Measures how far `s` falls short of the reference value vector at every
/// state, by solving the opponent's best-reply MDP exactly: for the
/// reachability player the gap is reference - guaranteed, for the safety
/// player it is (what the opponent can extract) - reference. The reference
/// must pass the fixpoint-residual gate (and pin targets to 1, absorbing
/// non-targets to 0) or it is rejected.
GapReport optimality_gap(const GameStructure& g, int player, const StationaryStrategy& s,
                         const ValueVector& reference);

/// Exact epsilon-Nash deviation gaps: for each player, the best unilateral
/// deviation value minus the profile payoff. The profile is an eps-Nash
/// equilibrium from s iff every gap at s is <= eps.
GapReport nash_gap(const GameStructure& g, const StrategyProfile& profile,
                   std::optional<int> from_state = std::nullopt);

/// Rounds every probability to a multiple of 1/q without changing any
/// support; every componentwise error is strictly below 1/q. Requires q at
/// least the largest support size; inputs for which no such rounding exists
/// are rejected as "q too small".
Distribution round_distribution(const Distribution& d, const Integer& q);
StrategyProfile round_profile(const StrategyProfile& profile, const Integer& q);

/// Exact enclosure of ln(x), x > 0, via argument reduction to [1, 2) and the
/// atanh series with a tail bound; the width is below 2^-precision_bits.
std::pair<Rational, Rational> ln_interval(const Rational& x, int precision_bits = 128);

/// Closed-form bound calculators. Logarithm terms are evaluated by exact
/// interval arithmetic and rounded in the conservative direction recorded in
/// `direction`; power-form bounds carry (base, exponent) and materialize the
/// exact value when it is rational.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string direction;                            // "upper" or "lower"
  std::optional<Rational> exact;                    // exact rational value if representable
  std::optional<Integer> integer_ceiling;           // conservative integer for upper bounds
  std::optional<std::pair<Rational, Rational>> interval;
  std::optional<Rational> base;                     // power-form bounds: base^exponent
  std::optional<Rational> exponent;
};

BoundReport bound_ell(int n, int k, const Rational& eps, const Rational& dmin);
BoundReport bound_roundedness_q(int n, int k, int m, const Rational& eps, const Rational& dmin);
BoundReport bound_duel_value(int n, int m, int j);
BoundReport bound_duel_patience(int n, int m, int j);
BoundReport bound_safety_duel_patience(const Rational& dmin, int n_states);

/// Compares a positive rational against base^(en/ed) exactly:
/// x >= base^(en/ed)  iff  x^ed >= base^en (all quantities positive).
bool at_least_power(const Rational& x, const Rational& base, const Rational& exponent);

/// The pure punishment reply against a low-patience strategy in the safety
/// duel, built per the four comparison cases at v1/v2: if the opponent ever
/// mixes onto their second action the reply matches parity (action 1 at v1,
/// action 2 at v2), otherwise it plays the opposite.
StationaryStrategy low_outcome_reply(const GameStructure& sd, const StationaryStrategy& sigma,
                                     int replying_player);

/// SplitMix64; published constants, reproducible bit for bit.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next();
};

struct SimulationResult {
  long episodes = 0;
  long horizon = 0;
  std::uint64_t seed = 0;
  std::vector<long> wins;        // per player 1..k
  std::vector<double> frequency;
  std::vector<double> std_error;
};

/// Statistical cross-check, never a ground truth: plays out the profile with
/// a deterministic PRNG (per-episode seeds derived from `seed`, so the
/// aggregate is independent of evaluation order). Successor sampling uses
/// 64-bit thresholds, exact up to 2^-64 per draw. A safety objective counts
/// as won when it held through the horizon.
SimulationResult simulate_play(const GameStructure& g, const StrategyProfile& profile, int start,
                               long horizon, long episodes, std::uint64_t seed);

}  // namespace csg
