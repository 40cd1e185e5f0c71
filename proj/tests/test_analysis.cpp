#include <doctest.h>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "oracles.hpp"

using namespace csg;

namespace {

// Interpolates every choice toward uniform by lambda, keeping full support.
StationaryStrategy perturb_toward_uniform(const GameStructure& g, const StationaryStrategy& s,
                                          const Rational& lambda) {
  StationaryStrategy out;
  out.player = s.player;
  for (const auto& [sid, d] : s.choice) {
    const auto& legal = g.actions(sid, s.player);
    std::vector<Distribution::Entry> entries;
    for (int a : legal) {
      const Rational p = (Rational(1) - lambda) * d.prob(a) +
                         lambda / Rational(static_cast<long>(legal.size()));
      entries.emplace_back(a, p);
    }
    out.choice[sid] = Distribution::make(std::move(entries));
  }
  return out;
}

}  // namespace

TEST_CASE("strategy patience and roundedness") {
  const GameStructure g = purgatory_duel(2, 2);
  StationaryStrategy positional;
  positional.player = 1;
  for (int sid = 0; sid < 4; ++sid) positional.choice[sid] = Distribution::pure(0);
  const auto [pp, pr] = strategy_patience(positional);
  CHECK(pp == Rational(1));
  CHECK(pr == 1);

  const DuelValueTable t12 = exact_duel_values(1, 2);
  const auto [p12, r12] = strategy_patience(t12.sigma2);
  CHECK(p12 == Rational(3));
  CHECK(r12 == 3);

  // duel(2,2): patience 5 from v1_1's (4/5, 1/5); the largest denominator in
  // the table's strategies is also 5.
  const DuelValueTable t22 = exact_duel_values(2, 2);
  const auto [p22, r22] = strategy_patience(t22.sigma2);
  CHECK(p22 == Rational(5));
  CHECK(r22 == 5);
  const GameStructure g22 = purgatory_duel(2, 2);
  CHECK(t22.sigma2.at(g22, 0).prob(0) == Rational(4, 5));
  CHECK(t22.sigma2.at(g22, 0).prob(1) == Rational(1, 5));
}

TEST_CASE("mirror of the optimal safety strategy is optimal for player 1") {
  for (int n = 1; n <= 2; ++n) {
    const GameStructure g = purgatory_duel(n, 2);
    const DuelValueTable table = exact_duel_values(n, 2);
    const StationaryStrategy mirror = mirror_strategy(g, table.sigma2);
    CHECK(mirror.player == 1);
    const GapReport gaps = optimality_gap(g, 1, mirror, table.values);
    for (const auto& e : gaps.entries) CHECK(e.gap == Rational(0));
  }
}

TEST_CASE("mirror is an involution and rejects non-duel games") {
  const GameStructure g = purgatory_duel(2, 3);
  const DuelValueTable table = exact_duel_values(2, 3);
  const StationaryStrategy twice = mirror_strategy(g, mirror_strategy(g, table.sigma2));
  CHECK(twice.player == 2);
  for (const auto& [sid, d] : table.sigma2.choice) CHECK(twice.at(g, sid) == d);
  CHECK_THROWS_AS(mirror_strategy(purgatory(1, 2), table.sigma2), DomainError);
}

TEST_CASE("mirroring perturbed strategies transfers the measured gap exactly") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);
  testing::TestRng rng(97);
  for (int trial = 0; trial < 4; ++trial) {
    const Rational lambda(1 + rng.below(25), 100);
    const StationaryStrategy pert = perturb_toward_uniform(g, table.sigma2, lambda);
    const GapReport orig = optimality_gap(g, 2, pert, table.values);
    const GapReport mirrored = optimality_gap(g, 1, mirror_strategy(g, pert), table.values);
    CHECK(mirrored.max_gap() <= orig.max_gap());
    // per-state the mirror's gap equals the original's at the swapped state
    CHECK(mirrored.at(1, 0).gap == orig.at(2, 1).gap);
    CHECK(mirrored.at(1, 1).gap == orig.at(2, 0).gap);
    CHECK(mirrored.at(1, 2).gap == orig.at(2, 2).gap);
  }
}

TEST_CASE("optimality gaps") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);

  SUBCASE("the recorded optimal strategies have gap zero") {
    const GapReport g2 = optimality_gap(g, 2, table.sigma2, table.values);
    CHECK(g2.max_gap() == Rational(0));
    const GapReport g1 = optimality_gap(g, 1, table.sigma1, table.values);
    CHECK(g1.max_gap() == Rational(0));
  }
  SUBCASE("uniform play for player 1 stays within the pos-val bound") {
    StationaryStrategy uni;
    uni.player = 1;
    uni.choice[0] = Distribution::two_point_uniform(0, 1);
    uni.choice[1] = Distribution::two_point_uniform(0, 1);
    const GapReport gaps = optimality_gap(g, 1, uni, table.values);
    const Rational bound = Rational(1, 2) - Rational(1) / Rational(2).pow(3);  // 1/2 - 1/m^{n+2}
    CHECK(gaps.at(1, 2).gap <= bound);
    CHECK(gaps.at(1, 2).gap > Rational(0));
  }
  SUBCASE("zeroing an action of the safety player at v2_1 is fully punished") {
    StationaryStrategy s2;
    s2.player = 2;
    s2.choice[0] = table.sigma2.at(g, 0);
    s2.choice[1] = Distribution::pure(0);  // not totally mixed at v2_1
    const GapReport gaps = optimality_gap(g, 2, s2, table.values);
    CHECK(gaps.at(2, 2).gap == Rational(1, 2));
  }
  SUBCASE("references that fail the gate are rejected") {
    ValueVector bogus = table.values;
    bogus[0] = Rational(3, 5);
    CHECK_THROWS_AS(optimality_gap(g, 2, table.sigma2, bogus), DomainError);
    ValueVector all_one = table.values;
    for (auto& [sid, v] : all_one) v = Rational(1);
    // a fixpoint, but it fails the absorbing-non-target pin
    CHECK_THROWS_AS(optimality_gap(g, 2, table.sigma2, all_one), DomainError);
  }
}

namespace {

StrategyProfile safety_duel_equilibrium(const GameStructure& g, const Rational& dmin, int c) {
  // The explicit stationary equilibrium: player 1 mixes
  // (1 + dmin^-c, 1 + dmin^c) / (2 + dmin^-c + dmin^c) at v1 and v2; player 2
  // plays the reversal by the game's symmetry.
  const Rational inv = (Rational(1) / dmin).pow(static_cast<unsigned long>(c));
  const Rational dc = dmin.pow(static_cast<unsigned long>(c));
  const Rational den = Rational(2) + inv + dc;
  const Rational first = (Rational(1) + inv) / den;
  const Rational second = (Rational(1) + dc) / den;
  StationaryStrategy s1, s2;
  s1.player = 1;
  s2.player = 2;
  for (int sid : {1, 2}) {
    s1.choice[sid] = Distribution::make({{0, first}, {1, second}});
    s2.choice[sid] = Distribution::make({{0, second}, {1, first}});
  }
  (void)g;
  return StrategyProfile::of(std::vector<StationaryStrategy>{s1, s2});
}

}  // namespace

TEST_CASE("nash gaps") {
  SUBCASE("safety duel equilibrium has gap zero from vs") {
    const Rational dmin(1, 216);
    const GameStructure g = safety_duel(1, dmin);
    const StrategyProfile profile = safety_duel_equilibrium(g, dmin, 1);
    const GapReport gaps = nash_gap(g, profile, 0);
    CHECK(gaps.entries.size() == 2);
    CHECK(gaps.at(1, 0).gap == Rational(0));
    CHECK(gaps.at(2, 0).gap == Rational(0));
    CHECK(gaps.at(1, 0).claimed == Rational(1, 2));
  }
  SUBCASE("a dominated pure action produces a positive gap") {
    // Note that against a totally mixed *optimal* opponent every reply nets
    // exactly the value, so a positive gap needs both sides away from the
    // equalizer: both playing pure low is exploitable by either player.
    const GameStructure g = purgatory_duel(1, 2);
    StationaryStrategy low1, low2;
    low1.player = 1;
    low2.player = 2;
    for (int sid : {0, 1}) {
      low1.choice[sid] = Distribution::pure(0);
      low2.choice[sid] = Distribution::pure(0);
    }
    const StrategyProfile profile =
        StrategyProfile::of(std::vector<StationaryStrategy>{low1, low2});
    const GapReport gaps = nash_gap(g, profile, 2 /* vs */);
    CHECK(gaps.at(1, 2).gap == Rational(1, 2));
    CHECK(gaps.at(2, 2).gap == Rational(1, 2));
  }
  SUBCASE("zero-sum profiles of the exact optima have no deviation") {
    const GameStructure g = purgatory_duel(2, 2);
    const DuelValueTable table = exact_duel_values(2, 2);
    const StrategyProfile profile =
        StrategyProfile::of(std::vector<StationaryStrategy>{table.sigma1, table.sigma2});
    const GapReport gaps = nash_gap(g, profile);
    CHECK(gaps.max_gap() == Rational(0));
  }
  SUBCASE("capacity and kind guards") {
    const GameStructure g = purgatory(1, 2);
    // purgatory is zero-sum, fine; a three-player reach game is rejected
    GameStructure bad = g;
    bad.objectives[1].kind = ObjectiveKind::Reach;
    StationaryStrategy s1, s2;
    s1.player = 1;
    s2.player = 2;
    s1.choice[0] = Distribution::two_point_uniform(0, 1);
    s2.choice[0] = Distribution::two_point_uniform(0, 1);
    const StrategyProfile profile = StrategyProfile::of(std::vector<StationaryStrategy>{s1, s2});
    CHECK_THROWS_AS(nash_gap(bad, profile), DomainError);
  }
}

TEST_CASE("rounding distributions") {
  SUBCASE("floor-and-absorb example") {
    const Distribution d = Distribution::make({{0, Rational(1, 3)}, {1, Rational(2, 3)}});
    const Distribution r = round_distribution(d, 4);
    CHECK(r.prob(0) == Rational(1, 4));
    CHECK(r.prob(1) == Rational(3, 4));
  }
  SUBCASE("already at denominator q is unchanged; pure is unchanged") {
    const Distribution d = Distribution::make({{0, Rational(3, 8)}, {1, Rational(5, 8)}});
    CHECK(round_distribution(d, 8) == d);
    CHECK(round_distribution(Distribution::pure(3), 1) == Distribution::pure(3));
    CHECK(round_distribution(Distribution::pure(3), 100) == Distribution::pure(3));
  }
  SUBCASE("infeasible inputs are rejected as q too small") {
    const Distribution d =
        Distribution::make({{0, Rational(1, 9)}, {1, Rational(1, 9)}, {2, Rational(7, 9)}});
    CHECK_THROWS_AS(round_distribution(d, 3), DomainError);
    CHECK_NOTHROW(round_distribution(d, 9));
    CHECK_THROWS_AS(round_distribution(d, 2), DomainError);  // below support size
  }
  SUBCASE("support, error, and divisibility on random distributions") {
    testing::TestRng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + rng.below(5);
      const Distribution d = rng.distribution(n, 9);
      const Integer q = 2 * n + rng.below(50);
      const Distribution r = round_distribution(d, q);
      CHECK(r.support_size() == d.support_size());
      Rational total_var;
      for (const auto& [id, p] : d.entries()) {
        const Rational err = (r.prob(id) - p).abs();
        CHECK(err < Rational(Integer(1), q));
        Integer rem;
        mpz_mod(rem.get_mpz_t(), q.get_mpz_t(), r.prob(id).denominator().get_mpz_t());
        CHECK(rem == 0);  // denominators divide q
        total_var += err;
      }
      CHECK(variation_distance(d, r) <= Rational(Integer(d.support_size()), q));
    }
  }
}

TEST_CASE("round_profile rounds every choice and enforces the precondition") {
  const Rational dmin(1, 216);
  const GameStructure g = safety_duel(1, dmin);
  const StrategyProfile profile = safety_duel_equilibrium(g, dmin, 1);
  const StrategyProfile rounded = round_profile(profile, 1000);
  for (int player = 1; player <= 2; ++player) {
    for (int sid : {1, 2}) {
      const Distribution& d = rounded.stationary(player).choice.at(sid);
      CHECK(d.support_size() == 2);
      for (const auto& [a, p] : d.entries()) {
        Integer rem;
        mpz_mod(rem.get_mpz_t(), Integer(1000).get_mpz_t(), p.denominator().get_mpz_t());
        CHECK(rem == 0);
      }
    }
  }
  CHECK_THROWS_AS(round_profile(profile, 1), DomainError);
}

TEST_CASE("ln interval enclosures") {
  // ln 2 = 0.6931471805599453...
  const auto [lo, hi] = ln_interval(Rational(2), 64);
  CHECK(lo <= hi);
  CHECK(hi - lo < Rational::pow2(-60));
  CHECK(lo > Rational(693147, 1000000));
  CHECK(hi < Rational(693148, 1000000));
  const auto [l64, h64] = ln_interval(Rational(64), 96);
  CHECK(l64 > Rational(4158883, 1000000));
  CHECK(h64 < Rational(4158884, 1000000));
  const auto [lhalf, hhalf] = ln_interval(Rational(1, 2), 64);
  CHECK(hhalf < Rational(0));
  CHECK(lhalf == -hi);
  CHECK(hhalf == -lo);
  CHECK_THROWS_AS(ln_interval(Rational(0)), DomainError);
}

TEST_CASE("bound calculators") {
  SUBCASE("roundedness q golden value") {
    const BoundReport q = bound_roundedness_q(7, 2, 2, Rational(1, 8), Rational(1, 2));
    REQUIRE(q.integer_ceiling.has_value());
    CHECK(*q.integer_ceiling == 953948);
    CHECK(q.direction == "upper");
    REQUIRE(q.interval.has_value());
    CHECK(q.interval->first <= q.interval->second);
  }
  SUBCASE("ell uses the same logarithm") {
    const BoundReport ell = bound_ell(7, 2, Rational(1, 8), Rational(1, 2));
    REQUIRE(ell.integer_ceiling.has_value());
    CHECK(*ell.integer_ceiling == 7453);  // ceil(14 * 128 * ln 64)
  }
  SUBCASE("duel bounds") {
    const BoundReport v = bound_duel_value(2, 2, 1);
    REQUIRE(v.exact.has_value());
    CHECK(*v.exact == Rational(5, 8));
    const BoundReport p = bound_duel_patience(2, 2, 1);
    REQUIRE(p.exact.has_value());
    CHECK(*p.exact == Rational(2));
    const BoundReport pn = bound_duel_patience(2, 2, 2);  // fractional exponent 1/2
    CHECK(!pn.exact.has_value());
    CHECK(*pn.exponent == Rational(1, 2));
  }
  SUBCASE("safety duel patience bound") {
    const BoundReport b = bound_safety_duel_patience(Rational(1, 216), 7);
    REQUIRE(b.exact.has_value());
    CHECK(*b.exact == Rational(36));
    const BoundReport b11 = bound_safety_duel_patience(Rational(1, 216), 11);
    REQUIRE(b11.exact.has_value());
    CHECK(*b11.exact == Rational(216 * 6));  // 216^{8/6} = 216 * 36^... = 216^{4/3} = 1296
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(bound_ell(0, 2, Rational(1, 8), Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(bound_duel_value(2, 2, 3), DomainError);
    CHECK_THROWS_AS(bound_safety_duel_patience(Rational(1, 216), 8), DomainError);
  }
}

TEST_CASE("exact power comparison") {
  CHECK(at_least_power(Rational(36), Rational(216), Rational(2, 3)));
  CHECK(!at_least_power(Rational(35), Rational(216), Rational(2, 3)));
  CHECK(at_least_power(Rational(1024), Rational(2), Rational(10)));
  CHECK(at_least_power(Rational(3), Rational(2), Rational(3, 2)));   // 9 >= 8
  CHECK(!at_least_power(Rational(2), Rational(2), Rational(3, 2)));  // 4 < 8
}

TEST_CASE("low-outcome reply construction") {
  const GameStructure g = safety_duel(1, Rational(1, 216));
  StationaryStrategy mixed;
  mixed.player = 1;
  mixed.choice[1] = Distribution::make({{0, Rational(35, 36)}, {1, Rational(1, 36)}});
  mixed.choice[2] = Distribution::pure(0);
  const StationaryStrategy reply = low_outcome_reply(g, mixed, 2);
  CHECK(reply.choice.at(1) == Distribution::pure(0));  // mixes second -> parity action at v1
  CHECK(reply.choice.at(2) == Distribution::pure(0));  // pure first -> the other index at v2
}

TEST_CASE("simulation is deterministic and matches pure outcomes") {
  const GameStructure g = purgatory(1, 2);
  StationaryStrategy s1, s2;
  s1.player = 1;
  s2.player = 2;
  s1.choice[0] = Distribution::pure(0);
  s2.choice[0] = Distribution::pure(0);  // equal guesses: straight to top
  const StrategyProfile profile = StrategyProfile::of(std::vector<StationaryStrategy>{s1, s2});
  const SimulationResult res = simulate_play(g, profile, 0, 10, 100, 42);
  CHECK(res.wins[0] == 100);
  CHECK(res.wins[1] == 0);
  CHECK(res.frequency[0] == 1.0);
  const SimulationResult again = simulate_play(g, profile, 0, 10, 100, 42);
  CHECK(res.wins == again.wins);
  // absorbing start inside the target
  const SimulationResult at_top = simulate_play(g, profile, 1, 5, 50, 7);
  CHECK(at_top.wins[0] == 50);
}
