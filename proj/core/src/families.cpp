#include "csg/families.hpp"

#include <algorithm>

#include "csg/matrix_game.hpp"

namespace csg {

namespace {

std::vector<int> iota_actions(int m) {
  std::vector<int> a(m);
  for (int i = 0; i < m; ++i) a[i] = i;
  return a;
}

void add_absorbing(GameStructure& g, int id, const std::string& name) {
  g.states.push_back({id, name, true});
  for (int p = 1; p <= g.players; ++p) g.action_sets[{id, p}] = {0};
  g.transitions[id][std::vector<int>(g.players, 0)] = Distribution::pure(id);
}

void set_zero_sum_objectives(GameStructure& g, int top_id) {
  Objective reach{ObjectiveKind::Reach, {top_id}};
  std::vector<int> safe;
  for (const auto& s : g.states)
    if (s.id != top_id) safe.push_back(s.id);
  std::sort(safe.begin(), safe.end());
  g.objectives = {reach, Objective{ObjectiveKind::Safety, std::move(safe)}};
}

void sort_states(GameStructure& g) {
  std::sort(g.states.begin(), g.states.end(),
            [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; });
}

}  // namespace

GameStructure purgatory(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("purgatory requires n >= 1 and m >= 1");
  GameStructure g;
  g.players = 2;
  // ids: v1..vn = 0..n-1, top = n, bot = n+1
  const int top = n, bot = n + 1;
  for (int j = 0; j < n; ++j) {
    g.states.push_back({j, "v" + std::to_string(j + 1), false});
    g.action_sets[{j, 1}] = iota_actions(m);
    g.action_sets[{j, 2}] = iota_actions(m);
    for (int a1 = 0; a1 < m; ++a1) {
      for (int a2 = 0; a2 < m; ++a2) {
        const int succ = a1 > a2 ? 0 : (a1 < a2 ? bot : (j + 1 < n ? j + 1 : top));
        g.transitions[j][{a1, a2}] = Distribution::pure(succ);
      }
    }
  }
  add_absorbing(g, top, "top");
  add_absorbing(g, bot, "bot");
  sort_states(g);
  set_zero_sum_objectives(g, top);
  return g;
}

GameStructure purgatory_duel(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("purgatory duel requires n >= 1 and m >= 1");
  GameStructure g;
  g.players = 2;
  // ids: v1_1..v1_n = 0..n-1, v2_1..v2_n = n..2n-1, vs = 2n, top = 2n+1, bot = 2n+2
  const int vs = 2 * n, top = 2 * n + 1, bot = 2 * n + 2;
  for (int side = 1; side <= 2; ++side) {
    const int base = side == 1 ? 0 : n;
    const int zero = side == 1 ? bot : top;    // v^i_0
    const int done = side == 1 ? top : bot;    // v^i_{n+1}
    for (int j = 0; j < n; ++j) {
      const int id = base + j;
      g.states.push_back({id, "v" + std::to_string(side) + "_" + std::to_string(j + 1), false});
      g.action_sets[{id, 1}] = iota_actions(m);
      g.action_sets[{id, 2}] = iota_actions(m);
      for (int a1 = 0; a1 < m; ++a1) {
        for (int a2 = 0; a2 < m; ++a2) {
          const int succ = a1 > a2 ? vs : (a1 < a2 ? zero : (j + 1 < n ? id + 1 : done));
          g.transitions[id][{a1, a2}] = Distribution::pure(succ);
        }
      }
    }
  }
  g.states.push_back({vs, "vs", false});
  g.action_sets[{vs, 1}] = {0};
  g.action_sets[{vs, 2}] = {0};
  g.transitions[vs][{0, 0}] = Distribution::two_point_uniform(0, n);
  add_absorbing(g, top, "top");
  add_absorbing(g, bot, "bot");
  sort_states(g);
  set_zero_sum_objectives(g, top);
  return g;
}

namespace {

// Outcome of one comparison slot in the 3-state duel, by the nine-case table:
// slot 1 decides between bot'/top'/vs', slot 2 between top'/bot'/vs'.
int slot1_outcome(int cmp, int vs, int top, int bot) { return cmp > 0 ? bot : (cmp == 0 ? top : vs); }
int slot2_outcome(int cmp, int vs, int top, int bot) { return cmp > 0 ? top : (cmp == 0 ? bot : vs); }

int cmp3(int a, int b) { return a > b ? 1 : (a == b ? 0 : -1); }

GameStructure three_state_duel_impl(int m, bool restricted) {
  if (m < 1) throw DomainError("three-state duel requires m >= 1");
  GameStructure g;
  g.players = 2;
  const int vs = 0, top = 1, bot = 2;
  g.states.push_back({vs, "vs_p", false});
  // Action (i, j), 1-based components, gets id (i-1)*m + (j-1); the canonical
  // order is (1,1),(1,2),...,(m,m).
  auto pair_id = [m](int i, int j) { return (i - 1) * m + (j - 1); };
  std::vector<int> acts1, acts2;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      if (!restricted || i == 1 || j == 1) acts1.push_back(pair_id(i, j));
      if (!restricted || i == m || j == m) acts2.push_back(pair_id(i, j));
    }
  }
  g.action_sets[{vs, 1}] = acts1;
  g.action_sets[{vs, 2}] = acts2;
  for (int a1 : acts1) {
    const int x1 = a1 / m + 1, x2 = a1 % m + 1;
    for (int a2 : acts2) {
      const int y1 = a2 / m + 1, y2 = a2 % m + 1;
      const int first = slot1_outcome(cmp3(x1, y1), vs, top, bot);
      const int second = slot2_outcome(cmp3(x2, y2), vs, top, bot);
      g.transitions[vs][{a1, a2}] = Distribution::two_point_uniform(first, second);
    }
  }
  add_absorbing(g, top, "top_p");
  add_absorbing(g, bot, "bot_p");
  sort_states(g);
  set_zero_sum_objectives(g, top);
  return g;
}

}  // namespace

GameStructure three_state_duel(int m) { return three_state_duel_impl(m, false); }

GameStructure restricted_three_state_duel(int m) { return three_state_duel_impl(m, true); }

GameStructure safety_duel(int c, const Rational& dmin) {
  if (c < 1) throw DomainError("safety duel requires c >= 1");
  if (dmin.sign() <= 0 || dmin > Rational(1, 216))
    throw DomainError("safety duel requires 0 < delta_min <= 1/216, got " + dmin.str());
  GameStructure g;
  g.players = 2;
  // ids: vs = 0, v1 = 1, v2 = 2, chains v{j}^{l}: v1^l = 2 + l, v2^l = 2 + (2c-1) + l
  // for l = 1..2c-1, then top, bot.
  const int chain = 2 * c - 1;
  const int top = 3 + 2 * chain, bot = top + 1;
  auto chain_id = [&](int j, int l) {  // v_j^l, l = 0..2c-1; l = 0 is top/bot
    if (l == 0) return j == 1 ? top : bot;
    return 2 + (j - 1) * chain + l;
  };
  auto d = [&](int s, int sprime) {  // d(s, s'): 1 - delta on s, delta on s'
    return Distribution::make({{s, Rational(1) - dmin}, {sprime, dmin}});
  };

  g.states.push_back({0, "vs", false});
  g.action_sets[{0, 1}] = {0};
  g.action_sets[{0, 2}] = {0};
  g.transitions[0][{0, 0}] = Distribution::two_point_uniform(1, 2);

  for (int j = 1; j <= 2; ++j) {
    const int id = j;
    g.states.push_back({id, "v" + std::to_string(j), false});
    g.action_sets[{id, 1}] = {0, 1};
    g.action_sets[{id, 2}] = {0, 1};
    const int other = 3 - j;
    for (int l1 = 0; l1 < 2; ++l1) {
      for (int l2 = 0; l2 < 2; ++l2) {
        if (l1 == l2) {
          g.transitions[id][{l1, l2}] = d(0, chain_id(j, c - 1));
        } else if (l1 < l2) {
          g.transitions[id][{l1, l2}] = d(0, chain_id(other, 2 * c - 1));
        } else {
          g.transitions[id][{l1, l2}] = Distribution::pure(chain_id(other, 0));
        }
      }
    }
  }
  for (int j = 1; j <= 2; ++j) {
    for (int l = 1; l <= chain; ++l) {
      const int id = chain_id(j, l);
      g.states.push_back({id, "v" + std::to_string(j) + "_" + std::to_string(l), false});
      g.action_sets[{id, 1}] = {0};
      g.action_sets[{id, 2}] = {0};
      g.transitions[id][{0, 0}] = d(0, chain_id(j, l - 1));
    }
  }
  add_absorbing(g, top, "top");
  add_absorbing(g, bot, "bot");
  sort_states(g);

  std::vector<int> safe1, safe2;
  for (const auto& s : g.states) {
    if (s.id != bot) safe1.push_back(s.id);
    if (s.id != top) safe2.push_back(s.id);
  }
  g.objectives = {Objective{ObjectiveKind::Safety, std::move(safe1)},
                  Objective{ObjectiveKind::Safety, std::move(safe2)}};
  return g;
}

DuelValueTable exact_duel_values(int n, int m, std::size_t max_bits) {
  if (n < 1 || m < 1) throw DomainError("purgatory duel requires n >= 1 and m >= 1");
  auto check_bits = [max_bits](const Rational& r) {
    if (max_bits > 0 && r.bit_size() > max_bits)
      throw DomainError("duel value exceeded the bit cap: " + std::to_string(r.bit_size()) +
                        " bits > " + std::to_string(max_bits));
  };
  // v^1_j by backward recursion over tri-band games; v^2_j by mirroring.
  std::vector<Rational> v1(n + 2);
  v1[n + 1] = 1;
  for (int j = n; j >= 1; --j) {
    v1[j] = solve_matrix_game(build_tri_matrix(0, v1[j + 1], Rational(1, 2), m)).value;
    check_bits(v1[j]);
  }
  const GameStructure g = purgatory_duel(n, m);
  const int vs = 2 * n, top = 2 * n + 1, bot = 2 * n + 2;
  DuelValueTable table;
  table.n = n;
  table.m = m;
  for (int j = 1; j <= n; ++j) {
    table.values[j - 1] = v1[j];
    table.values[n + j - 1] = Rational(1) - v1[j];
  }
  table.values[vs] = Rational(1, 2);
  table.values[top] = 1;
  table.values[bot] = 0;

  // Optimal strategies come from the per-state local matrix games at the
  // exact values, so they are optimal in the generated game as-is.
  table.sigma1 = greedy_strategy_from_values(g, table.values, 1);
  table.sigma2 = greedy_strategy_from_values(g, table.values, 2);

  // Re-certify: a construction bug cannot silently survive the residual.
  if (fixpoint_residual(g, table.values) != Rational(0))
    throw std::logic_error("duel value table fails the fixpoint residual");
  return table;
}

StationaryStrategy project_strategy(const StationaryStrategy& tau, int m) {
  if (m < 1) throw DomainError("projection requires m >= 1");
  const auto it = tau.choice.find(0);
  if (it == tau.choice.end())
    throw DomainError("3-state strategy has no choice at vs_p (state 0)");
  const Distribution& d = it->second;
  for (const auto& [a, p] : d.entries())
    if (a < 0 || a >= m * m)
      throw DomainError("3-state strategy action " + std::to_string(a) +
                        " out of range for m = " + std::to_string(m));
  // Pair id a encodes 1-based components (a/m + 1, a%m + 1); component l is
  // played, index-reversed, at v^l_1 of Purgatory Duel(1, m).
  std::vector<Rational> at_v1(m), at_v2(m);
  for (const auto& [a, p] : d.entries()) {
    const int x1 = a / m + 1, x2 = a % m + 1;
    at_v1[m - x1] += p;  // duel action id of component x1 under reversal
    at_v2[m - x2] += p;
  }
  auto to_dist = [](const std::vector<Rational>& mass) {
    std::vector<Distribution::Entry> entries;
    for (int i = 0; i < static_cast<int>(mass.size()); ++i)
      if (mass[i] != Rational(0)) entries.emplace_back(i, mass[i]);
    return Distribution::make(std::move(entries));
  };
  StationaryStrategy out;
  out.player = tau.player;
  out.choice[0] = to_dist(at_v1);  // v1_1 has id 0 in purgatory_duel(1, m)
  out.choice[1] = to_dist(at_v2);  // v2_1 has id 1
  return out;
}

StationaryStrategy lift_strategy(const StationaryStrategy& sigma, int m) {
  if (m < 1) throw DomainError("lift requires m >= 1");
  const GameStructure duel = purgatory_duel(1, m);
  const Distribution d1 = sigma.at(duel, 0);
  const Distribution d2 = sigma.at(duel, 1);
  std::vector<Distribution::Entry> entries;
  for (const auto& [a1, p1] : d1.entries()) {
    for (const auto& [a2, p2] : d2.entries()) {
      const int x1 = m - a1, x2 = m - a2;  // reversed 1-based components
      entries.emplace_back((x1 - 1) * m + (x2 - 1), p1 * p2);
    }
  }
  StationaryStrategy out;
  out.player = sigma.player;
  out.choice[0] = Distribution::make(std::move(entries));
  return out;
}

GameStructure generate_family(const FamilySpec& spec) {
  if (spec.name == "purgatory") return purgatory(spec.n, spec.m);
  if (spec.name == "purgatory-duel") return purgatory_duel(spec.n, spec.m);
  if (spec.name == "three-state-duel") return three_state_duel(spec.m);
  if (spec.name == "restricted-three-state-duel") return restricted_three_state_duel(spec.m);
  if (spec.name == "safety-duel") return safety_duel(spec.c, spec.delta_min);
  throw DomainError("unknown family '" + spec.name + "'");
}

std::pair<int, int> duel_shape(const GameStructure& g) {
  const int N = static_cast<int>(g.states.size());
  if (N < 5 || N % 2 == 0) throw DomainError("not a purgatory duel (state count)");
  const int n = (N - 3) / 2;
  int m = 0;
  for (const auto& [key, acts] : g.action_sets) m = std::max(m, static_cast<int>(acts.size()));
  const GameStructure expect = purgatory_duel(n, m);
  const auto same_states = [&] {
    if (expect.states.size() != g.states.size()) return false;
    for (std::size_t i = 0; i < g.states.size(); ++i)
      if (g.states[i].id != expect.states[i].id || g.states[i].name != expect.states[i].name)
        return false;
    return true;
  }();
  if (!same_states || g.action_sets != expect.action_sets ||
      g.transitions != expect.transitions || g.objectives.size() != 2 ||
      g.objectives[0].targets != expect.objectives[0].targets ||
      g.objectives[0].kind != ObjectiveKind::Reach ||
      g.objectives[1].kind != ObjectiveKind::Safety ||
      g.objectives[1].targets != expect.objectives[1].targets)
    throw DomainError("not a purgatory duel");
  return {n, m};
}

}  // namespace csg
