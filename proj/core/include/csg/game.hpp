#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "csg/distribution.hpp"
#include "csg/rational.hpp"

namespace csg {

enum class ObjectiveKind { Reach, Safety };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Reach;
  std::vector<int> targets;  // sorted state ids

  bool contains(int state) const;
};

struct StateInfo {
  int id = 0;
  std::string name;
  bool absorbing = false;
};

/// Finite k-player concurrent stochastic game. Players are 1-based. Action
/// ids are small integers, listed per (state, player) in canonical order;
/// every full action profile of a state maps to one successor distribution.
///
/// Instances are plain data so that loaders can materialize invalid games and
/// hand them to validate_game, which reports violations as data. Generators
/// in families.hpp only ever produce valid games. All operations on games in
/// this library are pure; sharing immutable instances across threads is safe.
class GameStructure {
 public:
  std::vector<StateInfo> states;  // sorted by id
  int players = 0;
  std::map<std::pair<int, int>, std::vector<int>> action_sets;        // (state, player) -> actions
  std::map<int, std::map<std::vector<int>, Distribution>> transitions;  // state -> profile -> dist
  std::vector<Objective> objectives;  // index p-1 for player p

  const StateInfo* find_state(int id) const;
  const StateInfo& state(int id) const;
  int state_id_by_name(std::string_view name) const;
  bool is_absorbing(int id) const;
  const std::vector<int>& actions(int state, int player) const;
  const Distribution& transition(int state, const std::vector<int>& profile) const;
  std::vector<int> state_ids() const;
  /// Largest action-set size across all states and players.
  int max_actions() const;
};

/// Empty iff all structural invariants hold; each violation names the
/// offending state or profile.
std::vector<std::string> validate_game(const GameStructure& g);

/// Smallest non-zero transition probability of the game.
Rational delta_min(const GameStructure& g);

/// Two players with complementary Reach/Safety objectives (player 1 Reach).
bool is_zero_sum_reachability(const GameStructure& g);

/// True iff every player's objective is Safety.
bool is_all_safety(const GameStructure& g);

std::string profile_str(const std::vector<int>& profile);

}  // namespace csg
