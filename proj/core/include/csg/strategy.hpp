#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "csg/game.hpp"

namespace csg {

/// Alive sets are bitmasks over players: bit (p-1) set means player p has not
/// lost yet. Limited to 16 players by the 2^k product construction.
using AliveMask = std::uint32_t;

inline constexpr int kMaxAliveSetPlayers = 16;

AliveMask full_alive_mask(int players);
AliveMask alive_mask_at(const GameStructure& g, int state);
bool alive_contains(AliveMask mask, int player);

/// Per-state mixed action choice for one player. States where the player has
/// a single legal action may omit their entry; at(...) synthesizes the pure
/// choice there.
class StationaryStrategy {
 public:
  int player = 0;
  std::map<int, Distribution> choice;  // state -> distribution over action ids

  Distribution at(const GameStructure& g, int state) const;
  std::vector<std::string> validate(const GameStructure& g) const;
};

/// Choice depends on the current state and the set of players who have not
/// lost yet; once this player has lost they follow the pure fallback.
class PlayerStationaryStrategy {
 public:
  int player = 0;
  std::map<std::pair<AliveMask, int>, Distribution> choice;  // (alive, state) -> dist
  std::map<int, int> fallback;                               // state -> action

  Distribution at(const GameStructure& g, AliveMask alive, int state) const;
  std::vector<std::string> validate(const GameStructure& g) const;
};

/// One strategy per player, all of the same kind.
class StrategyProfile {
 public:
  std::variant<std::vector<StationaryStrategy>, std::vector<PlayerStationaryStrategy>> strategies;

  bool is_player_stationary() const;
  int players() const;
  const StationaryStrategy& stationary(int player) const;
  const PlayerStationaryStrategy& player_stationary(int player) const;
  std::vector<std::string> validate(const GameStructure& g) const;

  static StrategyProfile of(std::vector<StationaryStrategy> all);
  static StrategyProfile of(std::vector<PlayerStationaryStrategy> all);
};

}  // namespace csg
