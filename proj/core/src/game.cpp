#include "csg/game.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace csg {

bool Objective::contains(int state) const {
  return std::binary_search(targets.begin(), targets.end(), state);
}

const StateInfo* GameStructure::find_state(int id) const {
  const auto it = std::lower_bound(states.begin(), states.end(), id,
                                   [](const StateInfo& s, int v) { return s.id < v; });
  if (it != states.end() && it->id == id) return &*it;
  return nullptr;
}

const StateInfo& GameStructure::state(int id) const {
  const StateInfo* s = find_state(id);
  if (!s) throw DomainError("unknown state id " + std::to_string(id));
  return *s;
}

int GameStructure::state_id_by_name(std::string_view name) const {
  for (const auto& s : states)
    if (s.name == name) return s.id;
  throw DomainError("unknown state name '" + std::string(name) + "'");
}

bool GameStructure::is_absorbing(int id) const { return state(id).absorbing; }

const std::vector<int>& GameStructure::actions(int state_id, int player) const {
  const auto it = action_sets.find({state_id, player});
  if (it == action_sets.end())
    throw DomainError("no action set for state " + std::to_string(state_id) + ", player " +
                      std::to_string(player));
  return it->second;
}

const Distribution& GameStructure::transition(int state_id, const std::vector<int>& profile) const {
  const auto st = transitions.find(state_id);
  if (st != transitions.end()) {
    const auto it = st->second.find(profile);
    if (it != st->second.end()) return it->second;
  }
  throw DomainError("no transition for state " + std::to_string(state_id) + ", profile " +
                    profile_str(profile));
}

std::vector<int> GameStructure::state_ids() const {
  std::vector<int> ids;
  ids.reserve(states.size());
  for (const auto& s : states) ids.push_back(s.id);
  return ids;
}

int GameStructure::max_actions() const {
  std::size_t m = 0;
  for (const auto& [key, acts] : action_sets) m = std::max(m, acts.size());
  return static_cast<int>(m);
}

std::string profile_str(const std::vector<int>& profile) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) os << ',';
    os << profile[i];
  }
  os << ')';
  return os.str();
}

namespace {

void enumerate_profiles(const GameStructure& g, int state,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> profile(g.players);
  std::function<void(int)> rec = [&](int player) {
    if (player > g.players) {
      fn(profile);
      return;
    }
    const auto it = g.action_sets.find({state, player});
    if (it == g.action_sets.end()) return;  // reported separately
    for (int a : it->second) {
      profile[player - 1] = a;
      rec(player + 1);
    }
  };
  rec(1);
}

}  // namespace

std::vector<std::string> validate_game(const GameStructure& g) {
  std::vector<std::string> out;
  if (g.players < 1) out.push_back("player count must be at least 1");

  std::set<int> ids;
  std::set<std::string> names;
  for (const auto& s : g.states) {
    if (!ids.insert(s.id).second) out.push_back("duplicate state id " + std::to_string(s.id));
    if (!s.name.empty() && !names.insert(s.name).second)
      out.push_back("duplicate state name '" + s.name + "'");
  }
  if (!std::is_sorted(g.states.begin(), g.states.end(),
                      [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; }))
    out.push_back("states not sorted by id");

  for (const auto& s : g.states) {
    for (int p = 1; p <= g.players; ++p) {
      const auto it = g.action_sets.find({s.id, p});
      if (it == g.action_sets.end() || it->second.empty()) {
        out.push_back("state " + s.name + ": empty action set for player " + std::to_string(p));
        continue;
      }
      std::set<int> acts(it->second.begin(), it->second.end());
      if (acts.size() != it->second.size())
        out.push_back("state " + s.name + ": duplicate action id for player " + std::to_string(p));
      if (s.absorbing && it->second.size() != 1)
        out.push_back("absorbing state " + s.name + " has " + std::to_string(it->second.size()) +
                      " actions for player " + std::to_string(p));
    }
  }

  for (const auto& [sid, profs] : g.transitions)
    if (!ids.count(sid)) out.push_back("transition for unknown state id " + std::to_string(sid));

  for (const auto& s : g.states) {
    std::set<std::vector<int>> expected;
    enumerate_profiles(g, s.id, [&](const std::vector<int>& p) { expected.insert(p); });
    const auto st = g.transitions.find(s.id);
    const auto& have = st == g.transitions.end()
                           ? std::map<std::vector<int>, Distribution>{}
                           : st->second;
    for (const auto& p : expected)
      if (!have.count(p))
        out.push_back("missing transition " + s.name + " " + profile_str(p));
    for (const auto& [p, dist] : have) {
      if (!expected.count(p)) {
        out.push_back("transition for illegal profile " + s.name + " " + profile_str(p));
        continue;
      }
      if (dist.sum() != Rational(1))
        out.push_back("transition (" + s.name + "," + profile_str(p).substr(1) + " sums to " +
                      dist.sum().str());
      for (const auto& [succ, prob] : dist.entries()) {
        if (!ids.count(succ))
          out.push_back("transition " + s.name + " " + profile_str(p) + " targets unknown state " +
                        std::to_string(succ));
        if (prob.sign() <= 0)
          out.push_back("transition " + s.name + " " + profile_str(p) + " has non-positive mass on " +
                        std::to_string(succ));
      }
      if (s.absorbing && !(dist.is_pure() && !dist.empty() && dist.entries()[0].first == s.id))
        out.push_back("absorbing state " + s.name + " does not self-loop");
    }
  }

  if (static_cast<int>(g.objectives.size()) != g.players) {
    out.push_back("objective count " + std::to_string(g.objectives.size()) + " != player count " +
                  std::to_string(g.players));
  } else {
    for (int p = 1; p <= g.players; ++p) {
      const auto& obj = g.objectives[p - 1];
      if (!std::is_sorted(obj.targets.begin(), obj.targets.end()))
        out.push_back("objective targets of player " + std::to_string(p) + " not sorted");
      for (int t : obj.targets)
        if (!ids.count(t))
          out.push_back("objective of player " + std::to_string(p) + " targets unknown state " +
                        std::to_string(t));
    }
  }
  return out;
}

Rational delta_min(const GameStructure& g) {
  bool seen = false;
  Rational best;
  for (const auto& [sid, profs] : g.transitions) {
    for (const auto& [p, dist] : profs) {
      for (const auto& [succ, prob] : dist.entries()) {
        if (prob.sign() <= 0) continue;
        if (!seen || prob < best) {
          best = prob;
          seen = true;
        }
      }
    }
  }
  if (!seen) throw DomainError("game has no transitions");
  return best;
}

bool is_zero_sum_reachability(const GameStructure& g) {
  if (g.players != 2 || g.objectives.size() != 2) return false;
  const auto& o1 = g.objectives[0];
  const auto& o2 = g.objectives[1];
  if (o1.kind != ObjectiveKind::Reach || o2.kind != ObjectiveKind::Safety) return false;
  // player 2's safe set must be exactly the complement of player 1's targets
  std::vector<int> complement;
  for (const auto& s : g.states)
    if (!o1.contains(s.id)) complement.push_back(s.id);
  return o2.targets == complement;
}

bool is_all_safety(const GameStructure& g) {
  if (g.objectives.size() != static_cast<std::size_t>(g.players)) return false;
  return std::all_of(g.objectives.begin(), g.objectives.end(),
                     [](const Objective& o) { return o.kind == ObjectiveKind::Safety; });
}

}  // namespace csg
