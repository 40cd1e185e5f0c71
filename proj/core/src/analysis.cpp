#include "csg/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace csg {

namespace {

void fold_patience(const Distribution& d, Rational& patience, Integer& roundedness) {
  patience = max(patience, d.patience());
  const Integer r = d.roundedness();
  if (r > roundedness) roundedness = r;
}

}  // namespace

std::pair<Rational, Integer> strategy_patience(const StationaryStrategy& s) {
  Rational patience = 1;
  Integer roundedness = 1;
  for (const auto& [sid, d] : s.choice) fold_patience(d, patience, roundedness);
  return {patience, roundedness};
}

std::pair<Rational, Integer> strategy_patience(const PlayerStationaryStrategy& s) {
  Rational patience = 1;
  Integer roundedness = 1;
  for (const auto& [key, d] : s.choice) fold_patience(d, patience, roundedness);
  return {patience, roundedness};
}

std::pair<Rational, Integer> profile_patience(const StrategyProfile& p) {
  Rational patience = 1;
  Integer roundedness = 1;
  if (p.is_player_stationary()) {
    for (const auto& s : std::get<std::vector<PlayerStationaryStrategy>>(p.strategies)) {
      const auto [pa, ro] = strategy_patience(s);
      patience = max(patience, pa);
      if (ro > roundedness) roundedness = ro;
    }
  } else {
    for (const auto& s : std::get<std::vector<StationaryStrategy>>(p.strategies)) {
      const auto [pa, ro] = strategy_patience(s);
      patience = max(patience, pa);
      if (ro > roundedness) roundedness = ro;
    }
  }
  return {patience, roundedness};
}

StationaryStrategy mirror_strategy(const GameStructure& duel, const StationaryStrategy& s) {
  const auto [n, m] = duel_shape(duel);
  if (s.player != 1 && s.player != 2) throw DomainError("mirror needs a two-player strategy");
  StationaryStrategy out;
  out.player = 3 - s.player;
  for (int side = 0; side < 2; ++side) {
    for (int j = 0; j < n; ++j) {
      const int from = side * n + j;        // v^{side+1}_{j+1}
      const int to = (1 - side) * n + j;    // opposite side, same level
      const Distribution d = s.at(duel, from);
      std::vector<Distribution::Entry> entries;
      for (const auto& [a, p] : d.entries()) entries.emplace_back(m - 1 - a, p);
      out.choice[to] = Distribution::make(std::move(entries));
    }
  }
  return out;
}

Rational GapReport::max_gap() const {
  Rational g;
  for (const auto& e : entries) g = max(g, e.gap);
  return g;
}

const GapEntry& GapReport::at(int player, int state) const {
  for (const auto& e : entries)
    if (e.player == player && e.state == state) return e;
  throw DomainError("gap report has no entry for player " + std::to_string(player) + ", state " +
                    std::to_string(state));
}

namespace {

void require_reference(const GameStructure& g, const ValueVector& v) {
  for (const auto& s : g.states) {
    const auto it = v.find(s.id);
    if (it == v.end()) throw DomainError("reference vector missing state " + s.name);
    if (it->second < Rational(0) || it->second > Rational(1))
      throw DomainError("reference value out of [0,1] at state " + s.name);
  }
  const auto& targets = g.objectives[0];
  for (const auto& s : g.states) {
    if (targets.contains(s.id) && v.at(s.id) != Rational(1))
      throw DomainError("reference does not pin target state " + s.name + " to 1");
    if (s.absorbing && !targets.contains(s.id) && v.at(s.id) != Rational(0))
      throw DomainError("reference does not pin absorbing non-target state " + s.name + " to 0");
  }
  if (fixpoint_residual(g, v) != Rational(0))
    throw DomainError("reference vector fails the fixpoint residual");
}

}  // namespace

GapReport optimality_gap(const GameStructure& g, int player, const StationaryStrategy& s,
                         const ValueVector& reference) {
  if (!is_zero_sum_reachability(g))
    throw DomainError("optimality gaps are defined for zero-sum reachability games");
  if (player != 1 && player != 2) throw DomainError("player must be 1 or 2");
  require_reference(g, reference);
  StationaryStrategy copy = s;
  copy.player = player;
  // Single-strategy "profile": the opponent slot is unused by induce_mdp.
  StationaryStrategy dummy;
  dummy.player = 3 - player;
  for (const auto& st : g.states) {
    const auto& legal = g.actions(st.id, dummy.player);
    if (legal.size() > 1) dummy.choice[st.id] = Distribution::pure(legal.front());
  }
  const StrategyProfile profile = StrategyProfile::of(std::vector<StationaryStrategy>{copy, dummy});
  const InducedMDP mdp = induce_mdp(g, profile, 3 - player);
  const MdpSolution reply = optimal_value(mdp);

  GapReport report;
  report.witnesses[3 - player] = reply.policy;
  for (const auto& st : g.states) {
    GapEntry e;
    e.player = player;
    e.state = st.id;
    if (player == 1) {
      // reply.values = opponent's safety probability; the reach guarantee is
      // its complement.
      const Rational guaranteed = Rational(1) - reply.values.at(st.id);
      e.claimed = reference.at(st.id);
      e.best_reply = guaranteed;
      e.gap = max(Rational(0), e.claimed - guaranteed);
    } else {
      // reply.values = what the reachability player can extract against s.
      const Rational extracted = reply.values.at(st.id);
      e.claimed = Rational(1) - reference.at(st.id);
      e.best_reply = Rational(1) - extracted;
      e.gap = max(Rational(0), extracted - reference.at(st.id));
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

GapReport nash_gap(const GameStructure& g, const StrategyProfile& profile,
                   std::optional<int> from_state) {
  if (!is_all_safety(g) && !is_zero_sum_reachability(g))
    throw DomainError("nash gaps are defined for all-safety or zero-sum games");
  std::vector<int> starts;
  if (from_state) {
    g.state(*from_state);
    starts.push_back(*from_state);
  } else {
    starts = g.state_ids();
  }
  GapReport report;
  for (int player = 1; player <= g.players; ++player) {
    const InducedMDP mdp = induce_mdp(g, profile, player);
    const MdpSolution dev = optimal_value(mdp);
    report.witnesses[player] = dev.policy;
    for (int start : starts) {
      GapEntry e;
      e.player = player;
      e.state = start;
      e.claimed = profile_payoff(g, profile, player, start);
      const int mapped = mdp.is_product()
                             ? ((start << g.players) | static_cast<int>(alive_mask_at(g, start)))
                             : start;
      e.best_reply = dev.values.at(mapped);
      e.gap = max(Rational(0), e.best_reply - e.claimed);
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

Distribution round_distribution(const Distribution& d, const Integer& q) {
  if (!d.is_valid()) throw DomainError("cannot round an invalid distribution");
  if (q < Integer(d.support_size()))
    throw DomainError("q = " + integer_str(q) + " below the support size " +
                      std::to_string(d.support_size()));
  const std::size_t n = d.support_size();
  std::vector<Integer> mass(n);
  std::vector<Rational> frac(n);
  Integer assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational scaled = d.entries()[i].second * Rational(q);
    Integer f = scaled.floor();
    frac[i] = scaled - Rational(f);
    if (f == 0) f = 1;  // keep the support; d < 1/q still rounds within 1/q
    mass[i] = f;
    assigned += f;
  }
  if (assigned > q)
    throw DomainError("q = " + integer_str(q) + " too small to round this distribution");
  // Distribute the remaining mass by largest fractional part (ties toward the
  // smaller outcome id); each bump turns a floor into a ceiling. Only entries
  // still at their plain floor are eligible.
  Integer deficit = q - assigned;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer f = (d.entries()[i].second * Rational(q)).floor();
    if (frac[i].sign() > 0 && mass[i] == f) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t idx = 0; deficit > 0; ++idx) {
    if (idx >= order.size()) throw DomainError("q too small to round this distribution");
    mass[order[idx]] += 1;
    deficit -= 1;
  }
  std::vector<Distribution::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    entries.emplace_back(d.entries()[i].first, Rational(mass[i], q));
  Distribution out = Distribution::make(std::move(entries));
  // Postcondition check: support unchanged and every error < 1/q.
  if (out.support_size() != n) throw std::logic_error("rounding changed the support");
  for (std::size_t i = 0; i < n; ++i)
    if ((out.entries()[i].second - d.entries()[i].second).abs() >= Rational(Integer(1), q))
      throw std::logic_error("rounding error reached 1/q");
  return out;
}

StrategyProfile round_profile(const StrategyProfile& profile, const Integer& q) {
  std::size_t max_support = 0;
  auto fold = [&max_support](const Distribution& d) {
    max_support = std::max(max_support, d.support_size());
  };
  if (profile.is_player_stationary()) {
    for (const auto& s : std::get<std::vector<PlayerStationaryStrategy>>(profile.strategies))
      for (const auto& [key, d] : s.choice) fold(d);
  } else {
    for (const auto& s : std::get<std::vector<StationaryStrategy>>(profile.strategies))
      for (const auto& [key, d] : s.choice) fold(d);
  }
  if (q < Integer(max_support))
    throw DomainError("q = " + integer_str(q) + " below the largest support size " +
                      std::to_string(max_support));
  StrategyProfile out = profile;
  if (out.is_player_stationary()) {
    for (auto& s : std::get<std::vector<PlayerStationaryStrategy>>(out.strategies))
      for (auto& [key, d] : s.choice) d = round_distribution(d, q);
  } else {
    for (auto& s : std::get<std::vector<StationaryStrategy>>(out.strategies))
      for (auto& [key, d] : s.choice) d = round_distribution(d, q);
  }
  return out;
}

std::pair<Rational, Rational> ln_interval(const Rational& x, int precision_bits) {
  if (x.sign() <= 0) throw DomainError("ln of a non-positive rational");
  if (x == Rational(1)) return {Rational(0), Rational(0)};
  if (x < Rational(1)) {
    const auto [lo, hi] = ln_interval(Rational(1) / x, precision_bits);
    return {-hi, -lo};
  }
  // Reduce x = 2^e * y with y in [1, 2), then ln x = e ln 2 + ln y. Both
  // series arguments have u <= 1/3, so the tail shrinks by ~3 bits per term.
  long e = 0;
  Rational y = x;
  while (y >= Rational(2)) {
    y /= Rational(2);
    ++e;
  }
  auto series = [precision_bits](const Rational& arg) -> std::pair<Rational, Rational> {
    // ln(arg) = 2 atanh(u), u = (arg-1)/(arg+1); tail after term i <=
    // 2 u^{2i+3} / ((2i+3)(1-u^2)).
    const Rational u = (arg - Rational(1)) / (arg + Rational(1));
    const Rational u2 = u * u;
    const Rational tol = Rational::pow2(-precision_bits);
    Rational sum;
    Rational term = u;  // u^{2i+1}
    long twoip1 = 1;
    for (;;) {
      sum += term / Rational(twoip1);
      const Rational tail = Rational(2) * term * u2 / (Rational(twoip1 + 2) * (Rational(1) - u2));
      if (tail < tol) return {Rational(2) * sum, Rational(2) * sum + tail};
      term *= u2;
      twoip1 += 2;
    }
  };
  auto [ylo, yhi] = series(y);
  if (e == 0) return {ylo, yhi};
  const auto [l2lo, l2hi] = series(Rational(2));
  return {Rational(e) * l2lo + ylo, Rational(e) * l2hi + yhi};
}

namespace {

std::string param(const Rational& r) { return r.str(); }

BoundReport ln_scaled_bound(std::string name, const Rational& factor, const Rational& ln_arg,
                            std::vector<std::pair<std::string, std::string>> params) {
  if (ln_arg <= Rational(1))
    throw DomainError(name + " requires a logarithm argument above 1, got " + ln_arg.str());
  const auto [lo, hi] = ln_interval(ln_arg);
  BoundReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.direction = "upper";
  r.interval = {factor * lo, factor * hi};
  r.integer_ceiling = (factor * hi).ceil();
  return r;
}

}  // namespace

BoundReport bound_ell(int n, int k, const Rational& eps, const Rational& dmin) {
  if (n < 1 || k < 1) throw DomainError("ell bound requires n >= 1 and k >= 1");
  if (eps.sign() <= 0 || eps >= Rational(1)) throw DomainError("ell bound requires 0 < eps < 1");
  if (dmin.sign() <= 0 || dmin > Rational(1)) throw DomainError("ell bound requires 0 < delta_min <= 1");
  const Rational factor = Rational(n) * Rational(k) * (Rational(1) / dmin).pow(n);
  const Rational ln_arg = Rational(4 * k) / eps;
  return ln_scaled_bound("ell", factor, ln_arg,
                         {{"n", std::to_string(n)},
                          {"k", std::to_string(k)},
                          {"eps", param(eps)},
                          {"delta_min", param(dmin)}});
}

BoundReport bound_roundedness_q(int n, int k, int m, const Rational& eps, const Rational& dmin) {
  if (n < 1 || k < 1 || m < 1) throw DomainError("q bound requires n, k, m >= 1");
  if (eps.sign() <= 0 || eps >= Rational(1)) throw DomainError("q bound requires 0 < eps < 1");
  if (dmin.sign() <= 0 || dmin > Rational(1)) throw DomainError("q bound requires 0 < delta_min <= 1");
  const Rational factor =
      Rational(4) * Rational(n) * Rational(k) * Rational(k) * Rational(m) *
      (Rational(1) / eps) * (Rational(1) / dmin).pow(n);
  const Rational ln_arg = Rational(4 * k) / eps;
  return ln_scaled_bound("q", factor, ln_arg,
                         {{"n", std::to_string(n)},
                          {"k", std::to_string(k)},
                          {"m", std::to_string(m)},
                          {"eps", param(eps)},
                          {"delta_min", param(dmin)}});
}

BoundReport bound_duel_value(int n, int m, int j) {
  if (n < 1 || m < 1 || j < 1 || j > n) throw DomainError("duel value bound requires 1 <= j <= n");
  Integer power = 1;
  for (int i = 0; i < n - j; ++i) power *= m;
  const Rational exponent = Rational(1 - m) * Rational(power) - Rational(1);
  BoundReport r;
  r.name = "duel-value";
  r.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"j", std::to_string(j)}};
  r.direction = "upper";
  r.base = Rational(2);
  r.exponent = exponent;
  if (exponent.is_integer() && exponent.abs() <= Rational(1'000'000))
    r.exact = Rational(1, 2) + Rational::pow2(exponent.numerator().get_si());
  return r;
}

BoundReport bound_duel_patience(int n, int m, int j) {
  if (n < 1 || m < 1 || j < 1 || j > n) throw DomainError("duel patience bound requires 1 <= j <= n");
  // (m-1)^2 * m^{n-j-1}; the exponent is fractional when j = n.
  Rational exponent = Rational((m - 1) * (m - 1));
  if (j <= n - 1) {
    Integer power = 1;
    for (int i = 0; i < n - j - 1; ++i) power *= m;
    exponent *= Rational(power);
  } else {
    exponent /= Rational(m);
  }
  BoundReport r;
  r.name = "duel-patience";
  r.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"j", std::to_string(j)}};
  r.direction = "lower";
  r.base = Rational(2);
  r.exponent = exponent;
  if (exponent.is_integer() && exponent <= Rational(1'000'000))
    r.exact = Rational::pow2(exponent.numerator().get_si());
  return r;
}

BoundReport bound_safety_duel_patience(const Rational& dmin, int n_states) {
  if (dmin.sign() <= 0 || dmin >= Rational(1))
    throw DomainError("safety duel patience bound requires 0 < delta_min < 1");
  if (n_states < 7 || (n_states - 3) % 4 != 0)
    throw DomainError("safety duel has n = 4c+3 states, got " + std::to_string(n_states));
  BoundReport r;
  r.name = "safety-duel-patience";
  r.params = {{"delta_min", param(dmin)}, {"n", std::to_string(n_states)}};
  r.direction = "lower";
  r.base = Rational(1) / dmin;
  r.exponent = Rational(n_states - 3, 6);
  // delta_min^{-(n-3)/6} is rational iff (1/dmin)^{n-3} has an exact 6th root.
  const Rational pow = (Rational(1) / dmin).pow(static_cast<unsigned long>(n_states - 3));
  Integer num_root, den_root;
  const bool num_exact = mpz_root(num_root.get_mpz_t(), pow.numerator().get_mpz_t(), 6) != 0;
  const bool den_exact = mpz_root(den_root.get_mpz_t(), pow.denominator().get_mpz_t(), 6) != 0;
  if (num_exact && den_exact) r.exact = Rational(num_root, den_root);
  return r;
}

bool at_least_power(const Rational& x, const Rational& base, const Rational& exponent) {
  if (x.sign() <= 0 || base.sign() <= 0) throw DomainError("power comparison needs positive values");
  const Integer en = exponent.numerator();
  const Integer ed = exponent.denominator();
  if (!en.fits_slong_p() || !ed.fits_ulong_p())
    throw DomainError("power comparison exponent too large");
  const long e_num = en.get_si();
  const unsigned long e_den = ed.get_ui();
  const Rational lhs = x.pow(e_den);
  const Rational rhs = e_num >= 0 ? base.pow(static_cast<unsigned long>(e_num))
                                  : Rational(1) / base.pow(static_cast<unsigned long>(-e_num));
  return lhs >= rhs;
}

StationaryStrategy low_outcome_reply(const GameStructure& sd, const StationaryStrategy& sigma,
                                     int replying_player) {
  // Only meaningful on safety_duel-shaped games: v1 has id 1, v2 has id 2,
  // each with actions {0, 1}.
  for (int vid : {1, 2}) {
    const auto& acts = sd.actions(vid, replying_player);
    if (acts != std::vector<int>{0, 1})
      throw DomainError("low-outcome reply expects the safety duel's two-action states");
  }
  StationaryStrategy out;
  out.player = replying_player;
  for (int j = 1; j <= 2; ++j) {
    const Distribution d = sigma.at(sd, j);
    const bool mixes_second = d.prob(1).sign() > 0;
    // Mixing onto the second action is punished with a_2^{j,j}; a strategy
    // pure on the first action gets a_2^{j,jhat}.
    const int action = mixes_second ? (j - 1) : (2 - j);
    out.choice[j] = Distribution::pure(action);
  }
  return out;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SimulationResult simulate_play(const GameStructure& g, const StrategyProfile& profile, int start,
                               long horizon, long episodes, std::uint64_t seed) {
  if (horizon < 0 || episodes < 1) throw DomainError("simulation needs horizon >= 0, episodes >= 1");
  g.state(start);
  const MarkovChain mc = induce_chain(g, profile);
  const bool product = !mc.product_origin.empty();
  const int mapped_start =
      product ? ((start << g.players) | static_cast<int>(alive_mask_at(g, start))) : start;

  // Per-state sampling thresholds: successor j is drawn when the 64-bit draw
  // falls in [t_{j-1}, t_j), t_j = floor(cum_j * 2^64).
  struct Sampler {
    std::vector<std::uint64_t> thresholds;  // last entry unused (catch-all)
    std::vector<int> successors;
  };
  std::map<int, Sampler> samplers;
  const Rational two64 = Rational::pow2(64);
  for (const auto& [sid, dist] : mc.transition) {
    Sampler s;
    Rational cum;
    for (const auto& [succ, p] : dist.entries()) {
      cum += p;
      s.successors.push_back(succ);
      const Integer t = (cum * two64).floor();
      s.thresholds.push_back(t.fits_ulong_p() ? static_cast<std::uint64_t>(t.get_ui())
                                              : ~std::uint64_t(0));
    }
    samplers[sid] = std::move(s);
  }

  auto base_of = [&](int sid) { return product ? mc.product_origin.at(sid).first : sid; };

  SimulationResult res;
  res.episodes = episodes;
  res.horizon = horizon;
  res.seed = seed;
  res.wins.assign(g.players, 0);
  for (long ep = 0; ep < episodes; ++ep) {
    SplitMix64 seeder{seed + static_cast<std::uint64_t>(ep)};
    SplitMix64 rng{seeder.next()};
    int cur = mapped_start;
    std::vector<bool> reached(g.players, false);
    std::vector<bool> safe(g.players, true);
    auto account = [&](int sid) {
      const int base = base_of(sid);
      for (int p = 1; p <= g.players; ++p) {
        const auto& obj = g.objectives[p - 1];
        if (obj.kind == ObjectiveKind::Reach && obj.contains(base)) reached[p - 1] = true;
        if (obj.kind == ObjectiveKind::Safety && !obj.contains(base)) safe[p - 1] = false;
      }
    };
    account(cur);
    for (long step = 0; step < horizon; ++step) {
      const Sampler& s = samplers.at(cur);
      if (s.successors.size() == 1 && s.successors[0] == cur) break;  // absorbed
      const std::uint64_t r = rng.next();
      std::size_t pick = s.successors.size() - 1;
      for (std::size_t j = 0; j + 1 < s.successors.size(); ++j) {
        if (r < s.thresholds[j]) {
          pick = j;
          break;
        }
      }
      cur = s.successors[pick];
      account(cur);
    }
    for (int p = 1; p <= g.players; ++p) {
      const bool win = g.objectives[p - 1].kind == ObjectiveKind::Reach ? reached[p - 1]
                                                                        : safe[p - 1];
      if (win) res.wins[p - 1] += 1;
    }
  }
  for (int p = 0; p < g.players; ++p) {
    const double f = static_cast<double>(res.wins[p]) / static_cast<double>(episodes);
    res.frequency.push_back(f);
    res.std_error.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(episodes)));
  }
  return res;
}

}  // namespace csg
