#include <doctest.h>

#include <algorithm>

#include "csg/families.hpp"
#include "csg/game.hpp"
#include "csg/json_io.hpp"
#include "oracles.hpp"

using namespace csg;

TEST_CASE("generated families validate cleanly") {
  CHECK(validate_game(purgatory(1, 2)).empty());
  CHECK(validate_game(purgatory(2, 3)).empty());
  CHECK(validate_game(purgatory_duel(1, 2)).empty());
  CHECK(validate_game(purgatory_duel(3, 3)).empty());
  CHECK(validate_game(three_state_duel(2)).empty());
  CHECK(validate_game(restricted_three_state_duel(3)).empty());
  CHECK(validate_game(safety_duel(1, Rational(1, 216))).empty());
  CHECK(validate_game(safety_duel(2, Rational(1, 1000))).empty());
}

TEST_CASE("violations name the offending state or profile") {
  GameStructure g = purgatory(1, 2);
  // break one transition's mass
  auto& dist = g.transitions[0][{0, 0}];
  dist = Distribution::make_unchecked({{1, Rational(3, 4)}});
  const auto violations = validate_game(g);
  REQUIRE(!violations.empty());
  bool found = false;
  for (const auto& v : violations)
    if (v == "transition (v1,0,0) sums to 3/4") found = true;
  CHECK(found);

  GameStructure dup = purgatory(1, 2);
  dup.states.push_back({0, "clone", false});
  std::sort(dup.states.begin(), dup.states.end(),
            [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; });
  const auto dup_violations = validate_game(dup);
  CHECK(std::any_of(dup_violations.begin(), dup_violations.end(), [](const std::string& v) {
    return v.find("duplicate state id 0") != std::string::npos;
  }));

  GameStructure missing = purgatory(1, 2);
  missing.transitions[0].erase({0, 1});
  const auto missing_violations = validate_game(missing);
  CHECK(std::any_of(missing_violations.begin(), missing_violations.end(), [](const std::string& v) {
    return v.find("missing transition v1 (0,1)") != std::string::npos;
  }));
}

TEST_CASE("delta_min across families") {
  CHECK(delta_min(purgatory(2, 2)) == Rational(1));
  CHECK(delta_min(purgatory_duel(2, 2)) == Rational(1, 2));
  CHECK(delta_min(safety_duel(1, Rational(1, 216))) == Rational(1, 216));
}

TEST_CASE("zero-sum and all-safety recognition") {
  CHECK(is_zero_sum_reachability(purgatory(1, 2)));
  CHECK(is_zero_sum_reachability(purgatory_duel(2, 2)));
  CHECK(is_zero_sum_reachability(three_state_duel(2)));
  CHECK(!is_zero_sum_reachability(safety_duel(1, Rational(1, 216))));
  CHECK(is_all_safety(safety_duel(1, Rational(1, 216))));
  CHECK(!is_all_safety(purgatory(1, 2)));
}

TEST_CASE("game JSON round trip is lossless and byte-stable") {
  for (const GameStructure& g :
       {purgatory(2, 2), purgatory_duel(2, 2), three_state_duel(2),
        restricted_three_state_duel(2), safety_duel(1, Rational(1, 216))}) {
    const std::string doc = game_to_json(g);
    const GameStructure back = game_from_json(doc);
    CHECK(validate_game(back).empty());
    CHECK(back.players == g.players);
    CHECK(back.transitions == g.transitions);
    CHECK(back.action_sets == g.action_sets);
    CHECK(game_to_json(back) == doc);
  }
}

TEST_CASE("strategy and profile JSON round trips") {
  const GameStructure g = purgatory_duel(1, 2);
  const DuelValueTable table = exact_duel_values(1, 2);
  const StrategyProfile profile =
      StrategyProfile::of(std::vector<StationaryStrategy>{table.sigma1, table.sigma2});
  const std::string doc = profile_to_json(profile);
  const StrategyProfile back = profile_from_json(doc);
  CHECK(back.validate(g).empty());
  CHECK(profile_to_json(back) == doc);
  CHECK(back.stationary(2).at(g, 0) == table.sigma2.at(g, 0));

  PlayerStationaryStrategy ps;
  ps.player = 1;
  ps.choice[{3, 1}] = Distribution::make({{0, Rational(1, 3)}, {1, Rational(2, 3)}});
  ps.fallback[1] = 0;
  const std::string ps_doc = strategy_to_json(ps);
  const StrategyProfile ps_back = profile_from_json("{\"strategies\":[" + ps_doc + "]}");
  CHECK(ps_back.is_player_stationary());
  CHECK(ps_back.player_stationary(1).choice.at({3, 1}).prob(1) == Rational(2, 3));
  CHECK(ps_back.player_stationary(1).fallback.at(1) == 0);
}

TEST_CASE("mixed profiles are rejected") {
  const std::string mixed = R"({"strategies":[
    {"player":1,"kind":"stationary","choice":[]},
    {"player":2,"kind":"player-stationary","choice":[],"fallback":[]}]})";
  CHECK_THROWS_AS(profile_from_json(mixed), DomainError);
}

TEST_CASE("strategy validation catches illegal actions and missing choices") {
  const GameStructure g = purgatory(1, 2);
  StationaryStrategy s;
  s.player = 1;
  s.choice[0] = Distribution::make({{0, Rational(1, 2)}, {5, Rational(1, 2)}});
  const auto errs = s.validate(g);
  CHECK(std::any_of(errs.begin(), errs.end(), [](const std::string& e) {
    return e.find("action 5 not legal") != std::string::npos;
  }));
  StationaryStrategy missing;
  missing.player = 2;
  CHECK(!missing.validate(g).empty());
}

TEST_CASE("tabular exports") {
  const GameStructure g = purgatory(1, 2);
  ValueVector v{{0, Rational(2, 3)}, {1, Rational(1)}, {2, Rational(0)}};
  CHECK(values_to_csv(g, v) == "state,name,value\n0,v1,2/3\n1,top,1\n2,bot,0\n");
  const GapReport empty;
  CHECK(gap_report_to_csv(empty) == "player,state,claimed,best_reply,gap\n");
  const ValueVector back = values_from_json(values_to_json(g, v));
  CHECK(back == v);
}

TEST_CASE("MDP and chain dumps use the shared rational encoding") {
  const GameStructure g = purgatory(1, 2);
  StationaryStrategy u1, u2;
  u1.player = 1;
  u2.player = 2;
  u1.choice[0] = Distribution::two_point_uniform(0, 1);
  u2.choice[0] = Distribution::two_point_uniform(0, 1);
  const StrategyProfile profile = StrategyProfile::of(std::vector<StationaryStrategy>{u1, u2});
  const std::string chain = chain_to_json(induce_chain(g, profile));
  CHECK(chain.find("\"p\": \"1/4\"") != std::string::npos);
  const std::string mdp = mdp_to_json(induce_mdp(g, profile, 1));
  CHECK(mdp.find("\"kind\": \"reach\"") != std::string::npos);
  CHECK(mdp.find("\"action\": 1") != std::string::npos);
}
