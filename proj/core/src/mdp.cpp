#include "csg/mdp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "csg/linear.hpp"

namespace csg {

const std::vector<int>& InducedMDP::actions_at(int state) const {
  const auto it = actions.find(state);
  if (it == actions.end()) throw DomainError("MDP has no state " + std::to_string(state));
  return it->second;
}

const Distribution& InducedMDP::dist(int state, int action) const {
  const auto it = transition.find({state, action});
  if (it == transition.end())
    throw DomainError("MDP has no transition at state " + std::to_string(state) + ", action " +
                      std::to_string(action));
  return it->second;
}

const Distribution& MarkovChain::dist(int state) const {
  const auto it = transition.find(state);
  if (it == transition.end()) throw DomainError("chain has no state " + std::to_string(state));
  return it->second;
}

namespace {

// Enumerates the joint mixture over the fixed players' actions. `fixed`
// yields each fixed player's distribution at the current (state, alive set);
// the callback receives a full profile template with the free player's slot
// left to the caller, plus the joint probability of the others' draw.
void mix_fixed_players(const GameStructure& g, int state,
                       const std::function<Distribution(int)>& dist_of_player, int free_player,
                       const std::function<void(std::vector<int>&, const Rational&)>& fn) {
  std::vector<int> profile(g.players, -1);
  std::function<void(int, Rational)> rec = [&](int player, Rational acc) {
    if (player > g.players) {
      fn(profile, acc);
      return;
    }
    if (player == free_player) {
      rec(player + 1, acc);
      return;
    }
    const Distribution d = dist_of_player(player);
    for (const auto& [a, p] : d.entries()) {
      profile[player - 1] = a;
      rec(player + 1, acc * p);
    }
  };
  rec(1, Rational(1));
}

int product_id(int base, AliveMask alive, int players) { return (base << players) | static_cast<int>(alive); }

std::string alive_str(AliveMask alive, int players) {
  std::string s = "{";
  bool first = true;
  for (int p = 1; p <= players; ++p) {
    if (!alive_contains(alive, p)) continue;
    if (!first) s += ",";
    s += std::to_string(p);
    first = false;
  }
  return s + "}";
}

struct ProductSpace {
  std::vector<std::pair<int, AliveMask>> nodes;  // discovered (base, alive) pairs
  std::map<int, std::pair<int, AliveMask>> origin;
};

// Product states reachable from the per-state initial alive sets. The
// successor relation is the union over all action profiles, so the space is
// valid for any strategy assignment and any free player.
ProductSpace reachable_product(const GameStructure& g) {
  if (g.players > kMaxAliveSetPlayers)
    throw DomainError("alive-set product limited to " + std::to_string(kMaxAliveSetPlayers) +
                      " players");
  ProductSpace ps;
  std::set<std::pair<int, AliveMask>> seen;
  std::deque<std::pair<int, AliveMask>> queue;
  for (const auto& s : g.states) {
    const auto node = std::make_pair(s.id, alive_mask_at(g, s.id));
    if (seen.insert(node).second) queue.push_back(node);
  }
  while (!queue.empty()) {
    const auto [sid, alive] = queue.front();
    queue.pop_front();
    ps.nodes.emplace_back(sid, alive);
    for (const auto& [prof, dist] : g.transitions.at(sid)) {
      for (const auto& [succ, p] : dist.entries()) {
        const AliveMask next = alive & alive_mask_at(g, succ);
        const auto node = std::make_pair(succ, next);
        if (seen.insert(node).second) queue.push_back(node);
      }
    }
  }
  std::sort(ps.nodes.begin(), ps.nodes.end());
  for (const auto& [sid, alive] : ps.nodes)
    ps.origin[product_id(sid, alive, g.players)] = {sid, alive};
  return ps;
}

StateInfo product_state_info(const GameStructure& g, int base, AliveMask alive) {
  const StateInfo& b = g.state(base);
  return StateInfo{product_id(base, alive, g.players), b.name + "@" + alive_str(alive, g.players),
                   b.absorbing};
}

void require_profile(const GameStructure& g, const StrategyProfile& profile) {
  auto errs = profile.validate(g);
  if (!errs.empty()) throw DomainError("invalid strategy profile: " + errs.front());
}

}  // namespace

MarkovChain induce_chain(const GameStructure& g, const StrategyProfile& profile) {
  require_profile(g, profile);
  MarkovChain mc;
  if (!profile.is_player_stationary()) {
    mc.states = g.states;
    for (const auto& s : g.states) {
      std::vector<Distribution::Entry> mix;
      mix_fixed_players(
          g, s.id, [&](int p) { return profile.stationary(p).at(g, s.id); }, /*free=*/0,
          [&](std::vector<int>& prof, const Rational& w) {
            for (const auto& [succ, p] : g.transition(s.id, prof).entries())
              mix.emplace_back(succ, w * p);
          });
      mc.transition[s.id] = Distribution::make(std::move(mix));
    }
    return mc;
  }
  const ProductSpace ps = reachable_product(g);
  mc.product_origin = ps.origin;
  for (const auto& [base, alive] : ps.nodes) {
    mc.states.push_back(product_state_info(g, base, alive));
    std::vector<Distribution::Entry> mix;
    mix_fixed_players(
        g, base, [&](int p) { return profile.player_stationary(p).at(g, alive, base); },
        /*free=*/0, [&](std::vector<int>& prof, const Rational& w) {
          for (const auto& [succ, p] : g.transition(base, prof).entries()) {
            const AliveMask next = alive & alive_mask_at(g, succ);
            mix.emplace_back(product_id(succ, next, g.players), w * p);
          }
        });
    mc.transition[product_id(base, alive, g.players)] = Distribution::make(std::move(mix));
  }
  std::sort(mc.states.begin(), mc.states.end(),
            [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; });
  return mc;
}

InducedMDP induce_mdp(const GameStructure& g, const StrategyProfile& profile, int free_player) {
  if (free_player < 1 || free_player > g.players)
    throw DomainError("free player index out of range");
  require_profile(g, profile);
  InducedMDP mdp;
  mdp.player = free_player;
  const Objective& obj = g.objectives[free_player - 1];

  if (!profile.is_player_stationary()) {
    mdp.states = g.states;
    mdp.objective = obj;
    for (const auto& s : g.states) {
      mdp.actions[s.id] = g.actions(s.id, free_player);
      for (int a : mdp.actions[s.id]) {
        std::vector<Distribution::Entry> mix;
        mix_fixed_players(
            g, s.id, [&](int p) { return profile.stationary(p).at(g, s.id); }, free_player,
            [&](std::vector<int>& prof, const Rational& w) {
              prof[free_player - 1] = a;
              for (const auto& [succ, p] : g.transition(s.id, prof).entries())
                mix.emplace_back(succ, w * p);
            });
        mdp.transition[{s.id, a}] = Distribution::make(std::move(mix));
      }
    }
    return mdp;
  }

  const ProductSpace ps = reachable_product(g);
  mdp.product_origin = ps.origin;
  std::vector<int> obj_targets;
  for (const auto& [base, alive] : ps.nodes) {
    mdp.states.push_back(product_state_info(g, base, alive));
    const int pid = product_id(base, alive, g.players);
    if (obj.contains(base)) obj_targets.push_back(pid);
    mdp.actions[pid] = g.actions(base, free_player);
    for (int a : mdp.actions[pid]) {
      std::vector<Distribution::Entry> mix;
      mix_fixed_players(
          g, base, [&](int p) { return profile.player_stationary(p).at(g, alive, base); },
          free_player, [&](std::vector<int>& prof, const Rational& w) {
            prof[free_player - 1] = a;
            for (const auto& [succ, p] : g.transition(base, prof).entries()) {
              const AliveMask next = alive & alive_mask_at(g, succ);
              mix.emplace_back(product_id(succ, next, g.players), w * p);
            }
          });
      mdp.transition[{pid, a}] = Distribution::make(std::move(mix));
    }
  }
  std::sort(mdp.states.begin(), mdp.states.end(),
            [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; });
  std::sort(obj_targets.begin(), obj_targets.end());
  mdp.objective = Objective{obj.kind, std::move(obj_targets)};
  return mdp;
}

ValueVector absorption_probabilities(const MarkovChain& mc, const std::vector<int>& target) {
  std::set<int> target_set(target.begin(), target.end());
  // Backward reachability: states that cannot reach the target at all sit in
  // (or only lead to) closed recurrent classes disjoint from it.
  std::map<int, std::vector<int>> preds;
  for (const auto& [sid, dist] : mc.transition)
    for (const auto& [succ, p] : dist.entries()) preds[succ].push_back(sid);
  std::set<int> can;
  std::deque<int> queue;
  for (int t : target)
    if (can.insert(t).second) queue.push_back(t);
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int pre : preds[s])
      if (can.insert(pre).second) queue.push_back(pre);
  }

  std::vector<int> transient;
  for (const auto& s : mc.states)
    if (can.count(s.id) && !target_set.count(s.id)) transient.push_back(s.id);

  ValueVector out;
  for (const auto& s : mc.states)
    out[s.id] = target_set.count(s.id) ? Rational(1) : Rational(0);
  if (transient.empty()) return out;

  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < transient.size(); ++i) index[transient[i]] = i;
  const std::size_t n = transient.size();
  Matrix a(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 1;
    for (const auto& [succ, p] : mc.dist(transient[i]).entries()) {
      if (target_set.count(succ)) {
        b[i] += p;
      } else if (const auto it = index.find(succ); it != index.end()) {
        a[i][it->second] -= p;
      }
      // successors outside `can` contribute 0
    }
  }
  const auto x = solve_linear_system(std::move(a), std::move(b));
  for (std::size_t i = 0; i < n; ++i) out[transient[i]] = x[i];
  return out;
}

namespace {

std::vector<int> complement_states(const InducedMDP& mdp, const std::vector<int>& inside) {
  std::set<int> in(inside.begin(), inside.end());
  std::vector<int> out;
  for (const auto& s : mdp.states)
    if (!in.count(s.id)) out.push_back(s.id);
  return out;
}

// Largest Z disjoint from `target` in which the controller can stay forever:
// greatest fixpoint of "has an action whose support stays in Z".
std::set<int> avoid_region(const InducedMDP& mdp, const std::set<int>& target,
                           PositionalPolicy* witness) {
  std::set<int> z;
  for (const auto& s : mdp.states)
    if (!target.count(s.id)) z.insert(s.id);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = z.begin(); it != z.end();) {
      bool has_staying = false;
      for (int a : mdp.actions_at(*it)) {
        bool stays = true;
        for (const auto& [succ, p] : mdp.dist(*it, a).entries())
          if (!z.count(succ)) stays = false;
        if (stays) {
          has_staying = true;
          break;
        }
      }
      if (!has_staying) {
        it = z.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  if (witness) {
    for (int s : z) {
      for (int a : mdp.actions_at(s)) {
        bool stays = true;
        for (const auto& [succ, p] : mdp.dist(s, a).entries())
          if (!z.count(succ)) stays = false;
        if (stays) {
          (*witness)[s] = a;
          break;
        }
      }
    }
  }
  return z;
}

// Policy iteration for reachability (maximize or minimize the probability of
// ever hitting `target`). For minimization the almost-sure avoid region is
// frozen at value 0 first, which makes every remaining policy proper and the
// fixpoint unique.
MdpSolution solve_reach(const InducedMDP& mdp, const std::vector<int>& target, bool maximize) {
  std::set<int> target_set(target.begin(), target.end());
  PositionalPolicy policy;
  std::set<int> frozen;  // value pinned to 0, policy fixed to a staying action
  if (!maximize) {
    PositionalPolicy staying;
    frozen = avoid_region(mdp, target_set, &staying);
    for (int s : frozen) policy[s] = staying[s];
  }
  for (const auto& s : mdp.states)
    if (!policy.count(s.id)) policy[s.id] = mdp.actions_at(s.id).front();

  auto evaluate = [&](const PositionalPolicy& pol) {
    MarkovChain mc;
    mc.states = mdp.states;
    for (const auto& s : mdp.states) {
      if (target_set.count(s.id) || frozen.count(s.id)) {
        mc.transition[s.id] = Distribution::pure(s.id);
      } else {
        mc.transition[s.id] = mdp.dist(s.id, pol.at(s.id));
      }
    }
    return absorption_probabilities(mc, target);
  };

  ValueVector values = evaluate(policy);
  for (;;) {
    bool improved = false;
    for (const auto& s : mdp.states) {
      if (target_set.count(s.id) || frozen.count(s.id)) continue;
      Rational best = values.at(s.id);
      int best_action = policy.at(s.id);
      for (int a : mdp.actions_at(s.id)) {
        Rational q;
        for (const auto& [succ, p] : mdp.dist(s.id, a).entries()) q += p * values.at(succ);
        if ((maximize && q > best) || (!maximize && q < best)) {
          best = q;
          best_action = a;
        }
      }
      if (best_action != policy.at(s.id)) {
        policy[s.id] = best_action;
        improved = true;
      }
    }
    if (!improved) break;
    values = evaluate(policy);
  }
  return {std::move(values), std::move(policy)};
}

}  // namespace

MdpSolution optimal_value(const InducedMDP& mdp) {
  if (mdp.objective.kind == ObjectiveKind::Reach)
    return solve_reach(mdp, mdp.objective.targets, /*maximize=*/true);
  // Safety: stay in the safe set forever = 1 - min reach of the complement.
  const std::vector<int> bad = complement_states(mdp, mdp.objective.targets);
  MdpSolution sol = solve_reach(mdp, bad, /*maximize=*/false);
  for (auto& [sid, v] : sol.values) v = Rational(1) - v;
  return sol;
}

InducedMDP apply_replacement_set(const InducedMDP& mdp, const ReplacementSet& q) {
  InducedMDP out = mdp;
  std::set<std::pair<int, int>> seen;
  for (const auto& [state, action, dist] : q.items) {
    if (!seen.insert({state, action}).second)
      throw DomainError("replacement set repeats (state " + std::to_string(state) + ", action " +
                        std::to_string(action) + ")");
    const auto it = out.transition.find({state, action});
    if (it == out.transition.end())
      throw DomainError("replacement for unknown (state " + std::to_string(state) + ", action " +
                        std::to_string(action) + ")");
    if (!dist.is_valid()) throw DomainError("replacement distribution is not a distribution");
    for (const auto& [succ, p] : dist.entries())
      if (std::none_of(out.states.begin(), out.states.end(),
                       [succ](const StateInfo& s) { return s.id == succ; }))
        throw DomainError("replacement distribution targets unknown state " + std::to_string(succ));
    it->second = dist;
  }
  return out;
}

std::optional<int> verify_replacement_premise(const InducedMDP& mdp, const ReplacementSet& q,
                                              int horizon) {
  if (mdp.objective.kind != ObjectiveKind::Safety)
    throw DomainError("replacement premise check is defined for safety-objective MDPs");
  const std::vector<int> bad = complement_states(mdp, mdp.objective.targets);
  std::set<int> bad_set(bad.begin(), bad.end());
  ValueVector v;
  for (const auto& s : mdp.states) v[s.id] = bad_set.count(s.id) ? Rational(1) : Rational(0);
  for (int t = 0; t <= horizon; ++t) {
    for (const auto& [state, action, dist] : q.items) {
      Rational before, after;
      for (const auto& [succ, p] : mdp.dist(state, action).entries()) before += p * v.at(succ);
      for (const auto& [succ, p] : dist.entries()) after += p * v.at(succ);
      if (!(before <= after)) return t;
    }
    ValueVector next = v;
    for (const auto& s : mdp.states) {
      if (bad_set.count(s.id)) continue;
      bool first = true;
      Rational best;
      for (int a : mdp.actions_at(s.id)) {
        Rational sum;
        for (const auto& [succ, p] : mdp.dist(s.id, a).entries()) sum += p * v.at(succ);
        if (first || sum < best) best = sum;
        first = false;
      }
      next[s.id] = best;
    }
    v = std::move(next);
  }
  return std::nullopt;
}

namespace {

int map_start(const GameStructure& g, bool product, int start) {
  return product ? product_id(start, alive_mask_at(g, start), g.players) : start;
}

std::vector<int> objective_reach_targets(const GameStructure& g, int player,
                                         const std::vector<StateInfo>& states,
                                         const std::map<int, std::pair<int, AliveMask>>& origin) {
  // States whose visit decides the objective: the targets for Reach, the
  // unsafe complement for Safety.
  const Objective& obj = g.objectives[player - 1];
  std::vector<int> out;
  for (const auto& s : states) {
    const int base = origin.empty() ? s.id : origin.at(s.id).first;
    const bool hit = obj.kind == ObjectiveKind::Reach ? obj.contains(base) : !obj.contains(base);
    if (hit) out.push_back(s.id);
  }
  return out;
}

}  // namespace

Rational profile_payoff(const GameStructure& g, const StrategyProfile& profile, int player,
                        int start) {
  if (player < 1 || player > g.players) throw DomainError("player index out of range");
  g.state(start);
  const MarkovChain mc = induce_chain(g, profile);
  const bool product = !mc.product_origin.empty();
  const auto targets = objective_reach_targets(g, player, mc.states, mc.product_origin);
  const ValueVector probs = absorption_probabilities(mc, targets);
  const Rational p = probs.at(map_start(g, product, start));
  return g.objectives[player - 1].kind == ObjectiveKind::Reach ? p : Rational(1) - p;
}

std::pair<Rational, PositionalPolicy> best_deviation_payoff(const GameStructure& g,
                                                            const StrategyProfile& profile,
                                                            int player, int start) {
  g.state(start);
  const InducedMDP mdp = induce_mdp(g, profile, player);
  const MdpSolution sol = optimal_value(mdp);
  return {sol.values.at(map_start(g, mdp.is_product(), start)), sol.policy};
}

}  // namespace csg
