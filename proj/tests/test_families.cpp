#include <doctest.h>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "csg/matrix_game.hpp"
#include "csg/value_iteration.hpp"
#include "oracles.hpp"

using namespace csg;

TEST_CASE("Purgatory(1,2) matches the 2x2 pattern [[top,bot],[v1,top]]") {
  const GameStructure g = purgatory(1, 2);
  CHECK(g.states.size() == 3);
  CHECK(g.transition(0, {0, 0}) == Distribution::pure(1));  // equal -> top
  CHECK(g.transition(0, {0, 1}) == Distribution::pure(2));  // lower -> bot
  CHECK(g.transition(0, {1, 0}) == Distribution::pure(0));  // higher -> v1
  CHECK(g.transition(0, {1, 1}) == Distribution::pure(1));
  CHECK(delta_min(g) == Rational(1));
}

TEST_CASE("Purgatory(2,2) is the four-state instance of the figure") {
  const GameStructure g = purgatory(2, 2);
  CHECK(g.states.size() == 4);
  CHECK(g.state(0).name == "v1");
  CHECK(g.state(1).name == "v2");
  // v1: equal advances to v2, higher restarts at v1, lower loses
  CHECK(g.transition(0, {0, 0}) == Distribution::pure(1));
  CHECK(g.transition(0, {1, 0}) == Distribution::pure(0));
  CHECK(g.transition(0, {0, 1}) == Distribution::pure(3));
  // v2: equal reaches top
  CHECK(g.transition(1, {0, 0}) == Distribution::pure(2));
  CHECK(g.transition(1, {1, 0}) == Distribution::pure(0));
  CHECK(g.transition(1, {0, 1}) == Distribution::pure(3));
  CHECK(g.objectives[0].kind == ObjectiveKind::Reach);
  CHECK(g.objectives[0].targets == std::vector<int>{2});
}

TEST_CASE("Purgatory Duel shapes and the two coin edges") {
  const GameStructure five = purgatory_duel(1, 2);
  CHECK(five.states.size() == 5);
  const GameStructure seven = purgatory_duel(2, 2);
  CHECK(seven.states.size() == 7);
  // vs flips the fair coin between v1_1 and v2_1
  const Distribution& coin = seven.transition(4, {0, 0});
  CHECK(coin.prob(0) == Rational(1, 2));
  CHECK(coin.prob(2) == Rational(1, 2));
  CHECK(delta_min(seven) == Rational(1, 2));
  // side-1 case table at v1_1: higher -> vs, lower -> bot, equal -> v1_2
  CHECK(seven.transition(0, {1, 0}) == Distribution::pure(4));
  CHECK(seven.transition(0, {0, 1}) == Distribution::pure(6));
  CHECK(seven.transition(0, {0, 0}) == Distribution::pure(1));
  // side-2 case table at v2_2: equal -> bot, lower -> top
  CHECK(seven.transition(3, {0, 0}) == Distribution::pure(6));
  CHECK(seven.transition(3, {0, 1}) == Distribution::pure(5));
  CHECK(seven.transition(3, {1, 0}) == Distribution::pure(4));
  CHECK(validate_game(seven).empty());
}

TEST_CASE("duel_shape recognizes generated duels and rejects others") {
  CHECK(duel_shape(purgatory_duel(2, 3)) == std::pair<int, int>{2, 3});
  CHECK_THROWS_AS(duel_shape(purgatory(2, 2)), DomainError);
  GameStructure tweaked = purgatory_duel(1, 2);
  tweaked.transitions[0][{0, 0}] = Distribution::pure(4);
  CHECK_THROWS_AS(duel_shape(tweaked), DomainError);
}

TEST_CASE("3-state duel for m = 2 matches the nine-case table") {
  const GameStructure g = three_state_duel(2);
  CHECK(g.states.size() == 3);
  CHECK(g.actions(0, 1).size() == 4);
  CHECK(g.actions(0, 2).size() == 4);
  const int vs = 0, top = 1, bot = 2;
  // action ids in order (1,1),(1,2),(2,1),(2,2)
  auto d = [&](int a1, int a2) { return g.transition(vs, {a1, a2}); };
  CHECK(d(0, 0) == Distribution::two_point_uniform(top, bot));   // (=,=)
  CHECK(d(0, 1) == Distribution::two_point_uniform(top, vs));    // (=,<)
  CHECK(d(1, 0) == Distribution::two_point_uniform(top, top));   // (=,>)
  CHECK(d(1, 1) == Distribution::two_point_uniform(top, bot));   // (=,=)
  CHECK(d(2, 0) == Distribution::two_point_uniform(bot, bot));   // (>,=)
  CHECK(d(2, 1) == Distribution::two_point_uniform(bot, vs));    // (>,<)
  CHECK(d(2, 3) == Distribution::two_point_uniform(top, vs));    // (=,<)
  CHECK(d(0, 2) == Distribution::two_point_uniform(vs, bot));    // (<,=)
  CHECK(d(0, 3) == Distribution::two_point_uniform(vs, vs));     // (<,<)
  CHECK(d(3, 0) == Distribution::two_point_uniform(bot, top));   // (>,>)
  CHECK(d(3, 2) == Distribution::two_point_uniform(top, top));   // (=,>)
  CHECK(d(1, 3) == Distribution::two_point_uniform(vs, bot));    // (<,=)
  CHECK(validate_game(g).empty());
}

TEST_CASE("restricted 3-state duel keeps 2m-1 actions and the grey submatrix") {
  for (int m = 2; m <= 4; ++m) {
    const GameStructure full = three_state_duel(m);
    const GameStructure res = restricted_three_state_duel(m);
    CHECK(static_cast<int>(res.actions(0, 1).size()) == 2 * m - 1);
    CHECK(static_cast<int>(res.actions(0, 2).size()) == 2 * m - 1);
    for (int a1 : res.actions(0, 1))
      for (int a2 : res.actions(0, 2))
        CHECK(res.transition(0, {a1, a2}) == full.transition(0, {a1, a2}));
  }
  // m = 2: the excluded actions are (2,2) for player 1 and (1,1) for player 2
  const GameStructure res2 = restricted_three_state_duel(2);
  CHECK(res2.actions(0, 1) == std::vector<int>{0, 1, 2});
  CHECK(res2.actions(0, 2) == std::vector<int>{1, 2, 3});
}

TEST_CASE("safety duel instances") {
  const GameStructure g1 = safety_duel(1, Rational(1, 216));
  CHECK(g1.states.size() == 7);
  const GameStructure g2 = safety_duel(2, Rational(1, 1000));
  CHECK(g2.states.size() == 11);
  CHECK(g1.objectives[0].kind == ObjectiveKind::Safety);
  CHECK(!g1.objectives[0].contains(g1.state_id_by_name("bot")));
  CHECK(g1.objectives[0].contains(g1.state_id_by_name("top")));
  CHECK(!g1.objectives[1].contains(g1.state_id_by_name("top")));
  CHECK_THROWS_AS(safety_duel(0, Rational(1, 216)), DomainError);
  CHECK_THROWS_AS(safety_duel(1, Rational(1, 100)), DomainError);
  CHECK_THROWS_AS(safety_duel(1, Rational(0)), DomainError);
  // dashed edges carry probability 1 - delta_min
  const Distribution& equal_case = g1.transition(1, {0, 0});
  CHECK(equal_case.prob(0) == Rational(215, 216));
}

TEST_CASE("exact duel values for the small instances") {
  const DuelValueTable t12 = exact_duel_values(1, 2);
  CHECK(t12.values.at(2) == Rational(1, 2));   // vs
  CHECK(t12.values.at(0) == Rational(2, 3));   // v1_1
  CHECK(t12.values.at(1) == Rational(1, 3));   // v2_1
  const DuelValueTable t22 = exact_duel_values(2, 2);
  CHECK(t22.values.at(1) == Rational(2, 3));    // v1_2
  CHECK(t22.values.at(0) == Rational(8, 15));   // v1_1
  CHECK(t22.values.at(2) == Rational(7, 15));   // v2_1
  CHECK(t22.values.at(3) == Rational(1, 3));    // v2_2
  CHECK(t22.values.at(4) == Rational(1, 2));    // vs
}

TEST_CASE("duel tables for n,m <= 3: sum identity, bounds, mirror symmetry") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      const DuelValueTable table = exact_duel_values(n, m);
      const GameStructure g = purgatory_duel(n, m);
      CHECK(table.values.at(2 * n) == Rational(1, 2));
      const Rational lo = Rational(1) / Rational(m).pow(n + 2);
      for (int j = 1; j <= n; ++j) {
        const Rational v1 = table.values.at(j - 1);
        const Rational v2 = table.values.at(n + j - 1);
        CHECK(v1 + v2 == Rational(1));
        CHECK(v1 > Rational(1, 2));
        CHECK(v2 < Rational(1, 2));
        // the m = 1 duel is a deterministic chain (v1_j has value exactly 1),
        // where the strict bounds below degenerate to equalities
        if (m >= 2) {
          CHECK(v1 >= lo);
          CHECK(v1 <= Rational(1) - lo);
          // strictly below 1/2 + 2^{(1-m) m^{n-j} - 1}
          const BoundReport bound = bound_duel_value(n, m, j);
          REQUIRE(bound.exact.has_value());
          CHECK(v1 < *bound.exact);
          // patience of sigma2(v1_j) at least 2^{(m-1)^2 m^{n-j-1}}, in exact
          // log2 space
          const auto pat = table.sigma2.at(g, j - 1).patience();
          const BoundReport pb = bound_duel_patience(n, m, j);
          CHECK(at_least_power(pat, *pb.base, *pb.exponent));
        }
      }
      if (m >= 2) {
        // recorded sigma1 at v^i_j equals recorded sigma2 at v^ihat_j with the
        // action index reversed
        for (int side = 0; side < 2; ++side) {
          for (int j = 0; j < n; ++j) {
            const Distribution d1 = table.sigma1.at(g, side * n + j);
            const Distribution d2 = table.sigma2.at(g, (1 - side) * n + j);
            for (int a = 0; a < m; ++a) CHECK(d1.prob(a) == d2.prob(m - 1 - a));
          }
        }
      }
      CHECK(fixpoint_residual(g, table.values) == Rational(0));
    }
  }
}

TEST_CASE("bit cap on the duel recursion") {
  CHECK_THROWS_AS(exact_duel_values(3, 3, 8), DomainError);
  CHECK_NOTHROW(exact_duel_values(3, 3, 0));  // unlimited
}

TEST_CASE("3-state trace equality against the duel, small horizon") {
  const GameStructure duel = purgatory_duel(1, 2);
  const GameStructure three = three_state_duel(2);
  ValueIterationOptions duel_opts;
  duel_opts.budget = 16;
  duel_opts.max_bits = 0;
  ValueIterationOptions three_opts;
  three_opts.budget = 8;
  three_opts.max_bits = 0;
  const IterationTrace dt = value_iterate(duel, duel_opts);
  const IterationTrace tt = value_iterate(three, three_opts);
  for (int t = 0; t <= 8; ++t) CHECK(dt.steps[2 * t].second.at(2) == tt.steps[t].second.at(0));
}

TEST_CASE("projection marginals and the product lift") {
  const int m = 2;
  SUBCASE("uniform projects to uniform") {
    StationaryStrategy tau;
    tau.player = 1;
    std::vector<Distribution::Entry> entries;
    for (int a = 0; a < m * m; ++a) entries.emplace_back(a, Rational(1, m * m));
    tau.choice[0] = Distribution::make(std::move(entries));
    const StationaryStrategy sigma = project_strategy(tau, m);
    for (int sid : {0, 1})
      for (int a = 0; a < m; ++a) CHECK(sigma.choice.at(sid).prob(a) == Rational(1, m));
  }
  SUBCASE("project is a left inverse of lift") {
    testing::TestRng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      StationaryStrategy sigma;
      sigma.player = 2;
      sigma.choice[0] = rng.distribution(m);
      sigma.choice[1] = rng.distribution(m);
      const StationaryStrategy back = project_strategy(lift_strategy(sigma, m), m);
      CHECK(back.choice.at(0) == sigma.choice.at(0));
      CHECK(back.choice.at(1) == sigma.choice.at(1));
    }
  }
  SUBCASE("lifting the exact optimum is optimal at vs_p") {
    const DuelValueTable table = exact_duel_values(1, m);
    const StationaryStrategy tau2 = lift_strategy(table.sigma2, m);
    // value vector of the 3-state duel: vs_p = 1/2
    const GameStructure three = three_state_duel(m);
    ValueVector v{{0, Rational(1, 2)}, {1, Rational(1)}, {2, Rational(0)}};
    CHECK(fixpoint_residual(three, v) == Rational(0));
    const GapReport gaps = optimality_gap(three, 2, tau2, v);
    CHECK(gaps.at(2, 0).gap == Rational(0));
  }
  SUBCASE("eps-optimality transfers through the projection") {
    const DuelValueTable table = exact_duel_values(1, m);
    const GameStructure duel = purgatory_duel(1, m);
    const GameStructure three = three_state_duel(m);
    ValueVector v3{{0, Rational(1, 2)}, {1, Rational(1)}, {2, Rational(0)}};
    testing::TestRng rng(59);
    for (int trial = 0; trial < 6; ++trial) {
      // perturb the lifted optimum within the simplex, keeping full support
      const StationaryStrategy tau = lift_strategy(table.sigma2, m);
      const long lam_num = 1 + rng.below(10);  // lambda <= 10/40 = 1/4
      const Rational lam(lam_num, 40);
      std::vector<Distribution::Entry> entries;
      for (const auto& [a, p] : tau.choice.at(0).entries())
        entries.emplace_back(a, (Rational(1) - lam) * p);
      for (int a = 0; a < m * m; ++a) entries.emplace_back(a, lam / Rational(m * m));
      StationaryStrategy tau_eps;
      tau_eps.player = 2;
      tau_eps.choice[0] = Distribution::make(std::move(entries));
      const Rational eps3 = optimality_gap(three, 2, tau_eps, v3).at(2, 0).gap;
      const StationaryStrategy sigma_eps = project_strategy(tau_eps, m);
      const Rational eps_duel =
          optimality_gap(duel, 2, sigma_eps, table.values).at(2, 2).gap;  // at vs
      CHECK(eps_duel <= eps3);
    }
  }
}

TEST_CASE("generate_family dispatch") {
  FamilySpec spec;
  spec.name = "purgatory-duel";
  spec.n = 1;
  spec.m = 2;
  CHECK(generate_family(spec).states.size() == 5);
  spec.name = "nonsense";
  CHECK_THROWS_AS(generate_family(spec), DomainError);
}

TEST_CASE("three-state duel delta_min is the coin") {
  CHECK(delta_min(three_state_duel(2)) == Rational(1, 2));
  CHECK(delta_min(restricted_three_state_duel(3)) == Rational(1, 2));
}
