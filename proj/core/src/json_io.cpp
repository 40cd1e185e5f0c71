#include "csg/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace csg {

using Json = nlohmann::ordered_json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rat(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw DomainError("expected a rational as \"num/den\" string, got " + j.dump());
}

Json dist_to_json(const Distribution& d, const char* outcome_key) {
  Json out = Json::array();
  for (const auto& [id, p] : d.entries()) out.push_back({{outcome_key, id}, {"p", p.str()}});
  return out;
}

Distribution dist_from_json(const Json& j, const char* outcome_key) {
  if (!j.is_array()) throw DomainError("expected a distribution array");
  std::vector<Distribution::Entry> entries;
  for (const auto& e : j) entries.emplace_back(e.at(outcome_key).get<int>(), rat(e.at("p")));
  return Distribution::make_unchecked(std::move(entries));
}

std::string esc_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string game_to_json(const GameStructure& g) {
  Json out;
  out["states"] = Json::array();
  for (const auto& s : g.states)
    out["states"].push_back({{"id", s.id}, {"name", s.name}, {"absorbing", s.absorbing}});
  out["players"] = g.players;
  Json actions = Json::object();
  for (const auto& s : g.states) {
    Json per_player = Json::array();
    for (int p = 1; p <= g.players; ++p) {
      const auto it = g.action_sets.find({s.id, p});
      per_player.push_back(it == g.action_sets.end() ? Json::array() : Json(it->second));
    }
    actions[std::to_string(s.id)] = per_player;
  }
  out["actions"] = actions;
  Json transitions = Json::array();
  for (const auto& s : g.states) {
    const auto it = g.transitions.find(s.id);
    if (it == g.transitions.end()) continue;
    for (const auto& [profile, dist] : it->second) {
      transitions.push_back(
          {{"state", s.id}, {"profile", profile}, {"dist", dist_to_json(dist, "state")}});
    }
  }
  out["transitions"] = transitions;
  Json objectives = Json::array();
  for (std::size_t i = 0; i < g.objectives.size(); ++i) {
    objectives.push_back({{"player", static_cast<int>(i + 1)},
                          {"kind", g.objectives[i].kind == ObjectiveKind::Reach ? "reach" : "safety"},
                          {"targets", g.objectives[i].targets}});
  }
  out["objectives"] = objectives;
  return out.dump(2) + "\n";
}

GameStructure game_from_json(const std::string& text) {
  const Json j = parse(text);
  GameStructure g;
  for (const auto& s : j.at("states")) {
    g.states.push_back({s.at("id").get<int>(), s.value("name", std::string{}),
                        s.value("absorbing", false)});
  }
  std::sort(g.states.begin(), g.states.end(),
            [](const StateInfo& a, const StateInfo& b) { return a.id < b.id; });
  g.players = j.at("players").get<int>();
  for (const auto& [key, lists] : j.at("actions").items()) {
    const int sid = std::stoi(key);
    int p = 1;
    for (const auto& list : lists) {
      g.action_sets[{sid, p}] = list.get<std::vector<int>>();
      ++p;
    }
  }
  for (const auto& t : j.at("transitions")) {
    g.transitions[t.at("state").get<int>()][t.at("profile").get<std::vector<int>>()] =
        dist_from_json(t.at("dist"), "state");
  }
  g.objectives.resize(j.at("objectives").size());
  for (const auto& o : j.at("objectives")) {
    const int p = o.at("player").get<int>();
    if (p < 1 || p > static_cast<int>(g.objectives.size()))
      throw DomainError("objective player index out of range");
    const std::string kind = o.at("kind").get<std::string>();
    if (kind != "reach" && kind != "safety")
      throw DomainError("objective kind must be \"reach\" or \"safety\"");
    Objective obj;
    obj.kind = kind == "reach" ? ObjectiveKind::Reach : ObjectiveKind::Safety;
    obj.targets = o.at("targets").get<std::vector<int>>();
    std::sort(obj.targets.begin(), obj.targets.end());
    g.objectives[p - 1] = std::move(obj);
  }
  return g;
}

namespace {

Json stationary_to_json_obj(const StationaryStrategy& s) {
  Json out;
  out["player"] = s.player;
  out["kind"] = "stationary";
  Json choice = Json::array();
  for (const auto& [sid, d] : s.choice)
    choice.push_back({{"state", sid}, {"dist", dist_to_json(d, "action")}});
  out["choice"] = choice;
  return out;
}

Json player_stationary_to_json_obj(const PlayerStationaryStrategy& s) {
  Json out;
  out["player"] = s.player;
  out["kind"] = "player-stationary";
  Json choice = Json::array();
  for (const auto& [key, d] : s.choice) {
    std::vector<int> alive;
    for (int p = 1; p <= kMaxAliveSetPlayers; ++p)
      if (alive_contains(key.first, p)) alive.push_back(p);
    choice.push_back({{"alive", alive}, {"state", key.second}, {"dist", dist_to_json(d, "action")}});
  }
  out["choice"] = choice;
  Json fallback = Json::array();
  for (const auto& [sid, a] : s.fallback) fallback.push_back({{"state", sid}, {"action", a}});
  out["fallback"] = fallback;
  return out;
}

StationaryStrategy stationary_from_json_obj(const Json& j) {
  StationaryStrategy s;
  s.player = j.at("player").get<int>();
  for (const auto& c : j.at("choice"))
    s.choice[c.at("state").get<int>()] = dist_from_json(c.at("dist"), "action");
  return s;
}

PlayerStationaryStrategy player_stationary_from_json_obj(const Json& j) {
  PlayerStationaryStrategy s;
  s.player = j.at("player").get<int>();
  for (const auto& c : j.at("choice")) {
    AliveMask mask = 0;
    for (int p : c.at("alive").get<std::vector<int>>()) {
      if (p < 1 || p > kMaxAliveSetPlayers) throw DomainError("alive-set player out of range");
      mask |= AliveMask(1) << (p - 1);
    }
    s.choice[{mask, c.at("state").get<int>()}] = dist_from_json(c.at("dist"), "action");
  }
  if (j.contains("fallback"))
    for (const auto& f : j.at("fallback"))
      s.fallback[f.at("state").get<int>()] = f.at("action").get<int>();
  return s;
}

}  // namespace

std::string strategy_to_json(const StationaryStrategy& s) {
  return stationary_to_json_obj(s).dump(2) + "\n";
}

std::string strategy_to_json(const PlayerStationaryStrategy& s) {
  return player_stationary_to_json_obj(s).dump(2) + "\n";
}

std::string profile_to_json(const StrategyProfile& p) {
  Json out;
  Json arr = Json::array();
  if (p.is_player_stationary()) {
    for (const auto& s : std::get<std::vector<PlayerStationaryStrategy>>(p.strategies))
      arr.push_back(player_stationary_to_json_obj(s));
  } else {
    for (const auto& s : std::get<std::vector<StationaryStrategy>>(p.strategies))
      arr.push_back(stationary_to_json_obj(s));
  }
  out["strategies"] = arr;
  return out.dump(2) + "\n";
}

StrategyProfile profile_from_json(const std::string& text) {
  const Json j = parse(text);
  const Json& arr = j.is_array() ? j : j.at("strategies");
  if (arr.empty()) throw DomainError("empty strategy profile");
  bool player_stationary = false, stationary = false;
  for (const auto& s : arr) {
    const std::string kind = s.value("kind", "stationary");
    if (kind == "player-stationary")
      player_stationary = true;
    else if (kind == "stationary")
      stationary = true;
    else
      throw DomainError("unknown strategy kind '" + kind + "'");
  }
  if (player_stationary && stationary)
    throw DomainError("profile mixes stationary and player-stationary strategies");
  if (player_stationary) {
    std::vector<PlayerStationaryStrategy> all;
    for (const auto& s : arr) all.push_back(player_stationary_from_json_obj(s));
    return StrategyProfile::of(std::move(all));
  }
  std::vector<StationaryStrategy> all;
  for (const auto& s : arr) all.push_back(stationary_from_json_obj(s));
  return StrategyProfile::of(std::move(all));
}

StationaryStrategy stationary_strategy_from_json(const std::string& text) {
  const Json j = parse(text);
  if (j.contains("strategies")) {
    const auto& arr = j.at("strategies");
    if (arr.size() != 1) throw DomainError("expected a single strategy");
    return stationary_from_json_obj(arr.at(0));
  }
  if (j.value("kind", "stationary") != "stationary")
    throw DomainError("expected a stationary strategy");
  return stationary_from_json_obj(j);
}

std::string values_to_json(const GameStructure& g, const ValueVector& v) {
  Json out;
  Json arr = Json::array();
  for (const auto& s : g.states) {
    const auto it = v.find(s.id);
    if (it == v.end()) continue;
    arr.push_back({{"state", s.id}, {"name", s.name}, {"v", it->second.str()}});
  }
  out["values"] = arr;
  return out.dump(2) + "\n";
}

std::string values_to_csv(const GameStructure& g, const ValueVector& v) {
  std::ostringstream os;
  os << "state,name,value\n";
  for (const auto& s : g.states) {
    const auto it = v.find(s.id);
    if (it == v.end()) continue;
    os << s.id << ',' << esc_csv(s.name) << ',' << it->second.str() << '\n';
  }
  return os.str();
}

ValueVector values_from_json(const std::string& text) {
  const Json j = parse(text);
  ValueVector v;
  for (const auto& e : j.at("values")) v[e.at("state").get<int>()] = rat(e.at("v"));
  return v;
}

std::string trace_to_json(const GameStructure& g, const IterationTrace& trace) {
  Json out;
  out["stop_reason"] = stop_reason_str(trace.stop_reason);
  Json steps = Json::array();
  for (const auto& [t, v] : trace.steps) {
    Json vals = Json::array();
    for (const auto& s : g.states) vals.push_back({{"state", s.id}, {"v", v.at(s.id).str()}});
    steps.push_back({{"t", t}, {"values", vals}});
  }
  out["trace"] = steps;
  return out.dump(2) + "\n";
}

std::string trace_to_csv(const GameStructure& g, const IterationTrace& trace) {
  std::ostringstream os;
  os << "t,state,value\n";
  for (const auto& [t, v] : trace.steps)
    for (const auto& s : g.states) os << t << ',' << s.id << ',' << v.at(s.id).str() << '\n';
  return os.str();
}

std::string matrix_to_json(const MatrixGame& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  Json out;
  out["entries"] = rows;
  return out.dump(2) + "\n";
}

MatrixGame matrix_from_json(const std::string& text) {
  const Json j = parse(text);
  const Json& rows = j.is_array() ? j : j.at("entries");
  std::vector<std::vector<Rational>> entries;
  for (const auto& row : rows) {
    entries.emplace_back();
    for (const auto& e : row) entries.back().push_back(rat(e));
  }
  return MatrixGame::from_rows(std::move(entries));
}

std::string matrix_solution_to_json(const MatrixSolution& sol) {
  Json out;
  out["value"] = sol.value.str();
  out["row_strategy"] = dist_to_json(sol.row_strategy, "action");
  out["col_strategy"] = dist_to_json(sol.col_strategy, "action");
  out["row_patience"] = sol.row_patience.str();
  out["col_patience"] = sol.col_patience.str();
  return out.dump(2) + "\n";
}

namespace {

Json states_to_json(const std::vector<StateInfo>& states,
                    const std::map<int, std::pair<int, AliveMask>>& origin) {
  Json arr = Json::array();
  for (const auto& s : states) {
    Json e = {{"id", s.id}, {"name", s.name}, {"absorbing", s.absorbing}};
    if (const auto it = origin.find(s.id); it != origin.end()) {
      e["base_state"] = it->second.first;
      std::vector<int> alive;
      for (int p = 1; p <= kMaxAliveSetPlayers; ++p)
        if (alive_contains(it->second.second, p)) alive.push_back(p);
      e["alive"] = alive;
    }
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace

std::string mdp_to_json(const InducedMDP& mdp) {
  Json out;
  out["player"] = mdp.player;
  out["states"] = states_to_json(mdp.states, mdp.product_origin);
  Json actions = Json::object();
  for (const auto& s : mdp.states) actions[std::to_string(s.id)] = mdp.actions_at(s.id);
  out["actions"] = actions;
  Json transitions = Json::array();
  for (const auto& s : mdp.states) {
    for (int a : mdp.actions_at(s.id)) {
      transitions.push_back(
          {{"state", s.id}, {"action", a}, {"dist", dist_to_json(mdp.dist(s.id, a), "state")}});
    }
  }
  out["transitions"] = transitions;
  out["objective"] = {{"kind", mdp.objective.kind == ObjectiveKind::Reach ? "reach" : "safety"},
                      {"targets", mdp.objective.targets}};
  return out.dump(2) + "\n";
}

std::string chain_to_json(const MarkovChain& mc) {
  Json out;
  out["states"] = states_to_json(mc.states, mc.product_origin);
  Json transitions = Json::array();
  for (const auto& s : mc.states)
    transitions.push_back({{"state", s.id}, {"dist", dist_to_json(mc.dist(s.id), "state")}});
  out["transitions"] = transitions;
  return out.dump(2) + "\n";
}

std::string duel_table_to_json(const DuelValueTable& table) {
  const GameStructure g = purgatory_duel(table.n, table.m);
  Json out;
  out["n"] = table.n;
  out["m"] = table.m;
  out["values"] = parse(values_to_json(g, table.values)).at("values");
  out["sigma1"] = stationary_to_json_obj(table.sigma1);
  out["sigma2"] = stationary_to_json_obj(table.sigma2);
  return out.dump(2) + "\n";
}

std::string gap_report_to_json(const GapReport& r) {
  Json out;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"player", e.player},
                       {"state", e.state},
                       {"claimed", e.claimed.str()},
                       {"best_reply", e.best_reply.str()},
                       {"gap", e.gap.str()}});
  }
  out["entries"] = entries;
  out["max_gap"] = r.entries.empty() ? "0" : r.max_gap().str();
  Json witnesses = Json::array();
  for (const auto& [player, policy] : r.witnesses) {
    Json pol = Json::array();
    for (const auto& [sid, a] : policy) pol.push_back({{"state", sid}, {"action", a}});
    witnesses.push_back({{"player", player}, {"policy", pol}});
  }
  out["witnesses"] = witnesses;
  return out.dump(2) + "\n";
}

std::string gap_report_to_csv(const GapReport& r) {
  std::ostringstream os;
  os << "player,state,claimed,best_reply,gap\n";
  for (const auto& e : r.entries)
    os << e.player << ',' << e.state << ',' << e.claimed.str() << ',' << e.best_reply.str() << ','
       << e.gap.str() << '\n';
  return os.str();
}

std::string bound_report_to_json(const BoundReport& r) {
  Json out;
  out["name"] = r.name;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  out["params"] = params;
  out["direction"] = r.direction;
  if (r.exact) out["exact"] = r.exact->str();
  if (r.integer_ceiling) out["integer_ceiling"] = integer_str(*r.integer_ceiling);
  if (r.interval) {
    out["interval"] = {{"lo", r.interval->first.str()}, {"hi", r.interval->second.str()}};
  }
  if (r.base) out["base"] = r.base->str();
  if (r.exponent) out["exponent"] = r.exponent->str();
  return out.dump(2) + "\n";
}

std::string bound_report_to_csv(const BoundReport& r) {
  std::ostringstream os;
  os << "field,value\n";
  os << "name," << esc_csv(r.name) << '\n';
  for (const auto& [k, v] : r.params) os << "param." << k << ',' << esc_csv(v) << '\n';
  os << "direction," << r.direction << '\n';
  if (r.exact) os << "exact," << r.exact->str() << '\n';
  if (r.integer_ceiling) os << "integer_ceiling," << integer_str(*r.integer_ceiling) << '\n';
  if (r.interval) {
    os << "interval_lo," << r.interval->first.str() << '\n';
    os << "interval_hi," << r.interval->second.str() << '\n';
  }
  if (r.base) os << "base," << r.base->str() << '\n';
  if (r.exponent) os << "exponent," << r.exponent->str() << '\n';
  return os.str();
}

std::string simulation_to_json(const SimulationResult& r) {
  Json out;
  out["episodes"] = r.episodes;
  out["horizon"] = r.horizon;
  out["seed"] = r.seed;
  Json players = Json::array();
  for (std::size_t p = 0; p < r.wins.size(); ++p) {
    players.push_back({{"player", static_cast<int>(p + 1)},
                       {"wins", r.wins[p]},
                       {"frequency", r.frequency[p]},
                       {"std_error", r.std_error[p]}});
  }
  out["players"] = players;
  return out.dump(2) + "\n";
}

std::string simulation_to_csv(const SimulationResult& r) {
  std::ostringstream os;
  os << "player,wins,episodes,frequency,std_error\n";
  for (std::size_t p = 0; p < r.wins.size(); ++p) {
    os << (p + 1) << ',' << r.wins[p] << ',' << r.episodes << ',' << r.frequency[p] << ','
       << r.std_error[p] << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << content;
}

}  // namespace csg
