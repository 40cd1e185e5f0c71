#include "csg/strategy.hpp"

#include <algorithm>

namespace csg {

AliveMask full_alive_mask(int players) {
  if (players < 1 || players > kMaxAliveSetPlayers)
    throw DomainError("alive-set construction supports 1.." +
                      std::to_string(kMaxAliveSetPlayers) + " players, got " +
                      std::to_string(players));
  return (AliveMask(1) << players) - 1;
}

AliveMask alive_mask_at(const GameStructure& g, int state) {
  AliveMask m = 0;
  for (int p = 1; p <= g.players; ++p) {
    const auto& obj = g.objectives[p - 1];
    const bool alive = obj.kind == ObjectiveKind::Safety ? obj.contains(state) : true;
    if (alive) m |= AliveMask(1) << (p - 1);
  }
  return m;
}

bool alive_contains(AliveMask mask, int player) {
  return (mask >> (player - 1)) & 1u;
}

namespace {

std::vector<std::string> check_choice(const GameStructure& g, int player, int state,
                                      const Distribution& d, const std::string& where) {
  std::vector<std::string> out;
  if (!d.is_valid()) {
    out.push_back(where + ": choice is not a probability distribution");
    return out;
  }
  const auto& legal = g.actions(state, player);
  for (const auto& [a, p] : d.entries())
    if (std::find(legal.begin(), legal.end(), a) == legal.end())
      out.push_back(where + ": action " + std::to_string(a) + " not legal");
  return out;
}

}  // namespace

Distribution StationaryStrategy::at(const GameStructure& g, int state) const {
  const auto it = choice.find(state);
  if (it != choice.end()) return it->second;
  const auto& legal = g.actions(state, player);
  if (legal.size() == 1) return Distribution::pure(legal[0]);
  throw DomainError("stationary strategy of player " + std::to_string(player) +
                    " has no choice at state " + std::to_string(state));
}

std::vector<std::string> StationaryStrategy::validate(const GameStructure& g) const {
  std::vector<std::string> out;
  if (player < 1 || player > g.players) {
    out.push_back("strategy player index " + std::to_string(player) + " out of range");
    return out;
  }
  for (const auto& s : g.states) {
    const auto& legal = g.actions(s.id, player);
    const auto it = choice.find(s.id);
    if (it == choice.end()) {
      if (legal.size() > 1)
        out.push_back("state " + s.name + ": missing choice for player " + std::to_string(player));
      continue;
    }
    auto errs = check_choice(g, player, s.id, it->second, "state " + s.name);
    out.insert(out.end(), errs.begin(), errs.end());
  }
  for (const auto& [sid, d] : choice)
    if (!g.find_state(sid)) out.push_back("choice at unknown state " + std::to_string(sid));
  return out;
}

Distribution PlayerStationaryStrategy::at(const GameStructure& g, AliveMask alive,
                                          int state) const {
  if (!alive_contains(alive, player)) {
    const auto it = fallback.find(state);
    if (it != fallback.end()) return Distribution::pure(it->second);
    const auto& legal = g.actions(state, player);
    if (legal.size() == 1) return Distribution::pure(legal[0]);
    throw DomainError("player-stationary strategy of player " + std::to_string(player) +
                      " has no fallback at state " + std::to_string(state));
  }
  const auto it = choice.find({alive, state});
  if (it != choice.end()) return it->second;
  const auto& legal = g.actions(state, player);
  if (legal.size() == 1) return Distribution::pure(legal[0]);
  throw DomainError("player-stationary strategy of player " + std::to_string(player) +
                    " has no choice at state " + std::to_string(state) + ", alive mask " +
                    std::to_string(alive));
}

std::vector<std::string> PlayerStationaryStrategy::validate(const GameStructure& g) const {
  std::vector<std::string> out;
  if (g.players > kMaxAliveSetPlayers) {
    out.push_back("player-stationary strategies support at most " +
                  std::to_string(kMaxAliveSetPlayers) + " players");
    return out;
  }
  if (player < 1 || player > g.players) {
    out.push_back("strategy player index " + std::to_string(player) + " out of range");
    return out;
  }
  const AliveMask full = full_alive_mask(g.players);
  for (AliveMask mask = 0; mask <= full; ++mask) {
    if (!alive_contains(mask, player)) continue;
    for (const auto& s : g.states) {
      const auto& legal = g.actions(s.id, player);
      const auto it = choice.find({mask, s.id});
      if (it == choice.end()) {
        if (legal.size() > 1)
          out.push_back("state " + s.name + ", alive mask " + std::to_string(mask) +
                        ": missing choice for player " + std::to_string(player));
        continue;
      }
      auto errs = check_choice(g, player, s.id, it->second,
                               "state " + s.name + ", alive mask " + std::to_string(mask));
      out.insert(out.end(), errs.begin(), errs.end());
    }
  }
  for (const auto& s : g.states) {
    const auto& legal = g.actions(s.id, player);
    if (legal.size() > 1 && !fallback.count(s.id))
      out.push_back("state " + s.name + ": missing fallback action");
  }
  for (const auto& [sid, a] : fallback) {
    if (!g.find_state(sid)) {
      out.push_back("fallback at unknown state " + std::to_string(sid));
      continue;
    }
    const auto& legal = g.actions(sid, player);
    if (std::find(legal.begin(), legal.end(), a) == legal.end())
      out.push_back("fallback action " + std::to_string(a) + " not legal at state " +
                    std::to_string(sid));
  }
  return out;
}

bool StrategyProfile::is_player_stationary() const {
  return std::holds_alternative<std::vector<PlayerStationaryStrategy>>(strategies);
}

int StrategyProfile::players() const {
  if (is_player_stationary())
    return static_cast<int>(std::get<std::vector<PlayerStationaryStrategy>>(strategies).size());
  return static_cast<int>(std::get<std::vector<StationaryStrategy>>(strategies).size());
}

const StationaryStrategy& StrategyProfile::stationary(int player) const {
  for (const auto& s : std::get<std::vector<StationaryStrategy>>(strategies))
    if (s.player == player) return s;
  throw DomainError("profile has no stationary strategy for player " + std::to_string(player));
}

const PlayerStationaryStrategy& StrategyProfile::player_stationary(int player) const {
  for (const auto& s : std::get<std::vector<PlayerStationaryStrategy>>(strategies))
    if (s.player == player) return s;
  throw DomainError("profile has no player-stationary strategy for player " +
                    std::to_string(player));
}

std::vector<std::string> StrategyProfile::validate(const GameStructure& g) const {
  std::vector<std::string> out;
  std::vector<int> seen;
  auto check_players = [&](auto const& list) {
    for (const auto& s : list) seen.push_back(s.player);
    std::sort(seen.begin(), seen.end());
    std::vector<int> expect(g.players);
    for (int p = 1; p <= g.players; ++p) expect[p - 1] = p;
    if (seen != expect)
      out.push_back("profile must contain exactly one strategy per player 1.." +
                    std::to_string(g.players));
    for (const auto& s : list) {
      auto errs = s.validate(g);
      out.insert(out.end(), errs.begin(), errs.end());
    }
  };
  if (is_player_stationary())
    check_players(std::get<std::vector<PlayerStationaryStrategy>>(strategies));
  else
    check_players(std::get<std::vector<StationaryStrategy>>(strategies));
  return out;
}

StrategyProfile StrategyProfile::of(std::vector<StationaryStrategy> all) {
  StrategyProfile p;
  p.strategies = std::move(all);
  return p;
}

StrategyProfile StrategyProfile::of(std::vector<PlayerStationaryStrategy> all) {
  StrategyProfile p;
  p.strategies = std::move(all);
  return p;
}

}  // namespace csg
