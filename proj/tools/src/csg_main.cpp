// Command-line front end for the concurrent-games toolkit. Every numeric
// result is produced by csg::core; this layer only parses flags, shuttles
// files, and formats reports. Identical inputs produce byte-identical output
// (wall-clock timing is opt-in via --timing for that reason).

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "csg/json_io.hpp"
#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"
#include "csg/value_iteration.hpp"
#include "csg/version.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace csg;

constexpr std::size_t kTruncateAt = 96;
constexpr std::size_t kTruncateKeep = 24;

struct CommonFlags {
  std::string format = "json";
  std::string out;
  bool full = false;
  bool timing = false;
};

std::size_t default_max_bits() {
  if (const char* env = std::getenv("CSG_MAX_BITS")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
    throw DomainError("CSG_MAX_BITS must be a non-negative integer");
  }
  return 1'000'000;
}

void truncate_strings(Json& j) {
  if (j.is_object() || j.is_array()) {
    for (auto& e : j) truncate_strings(e);
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.size() > kTruncateAt)
      j = s.substr(0, kTruncateKeep) + "..[" + std::to_string(s.size()) + " chars]";
  }
}

std::string truncate_csv(const std::string& csv) {
  std::ostringstream os;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    std::ostringstream row;
    std::size_t begin = 0;
    bool first = true;
    while (begin <= line.size()) {
      std::size_t end = line.find(',', begin);
      if (end == std::string::npos) end = line.size();
      std::string field = line.substr(begin, end - begin);
      if (field.size() > kTruncateAt)
        field = field.substr(0, kTruncateKeep) + "..[" + std::to_string(field.size()) + " chars]";
      if (!first) row << ',';
      row << field;
      first = false;
      begin = end + 1;
    }
    os << row.str() << '\n';
  }
  return os.str();
}

struct ReportSink {
  std::string verb;
  std::vector<std::pair<std::string, std::string>> params;
  CommonFlags flags;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }

  // payload_json: report payload; payload_csv: its tabular form.
  void emit(const Json& payload_json, const std::string& payload_csv) const {
    if (flags.format == "json") {
      Json report;
      report["verb"] = verb;
      Json p = Json::object();
      for (const auto& [k, v] : params) p[k] = v;
      report["params"] = p;
      report["version"] = kToolVersion;
      if (flags.timing) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
        report["wall_ms"] = ms;
      }
      report["result"] = payload_json;
      const std::string full = report.dump(2) + "\n";
      if (!flags.out.empty()) {
        write_file(flags.out, full);
      } else if (flags.full) {
        std::cout << full;
      } else {
        Json trimmed = report;
        truncate_strings(trimmed);
        std::cout << trimmed.dump(2) << "\n";
      }
      return;
    }
    if (flags.format != "csv") throw DomainError("unknown format '" + flags.format + "'");
    if (payload_csv.empty()) throw DomainError("verb '" + verb + "' has no CSV form");
    std::ostringstream os;
    os << "# verb: " << verb << '\n';
    os << "# version: " << kToolVersion << '\n';
    for (const auto& [k, v] : params) os << "# param " << k << ": " << v << '\n';
    os << payload_csv;
    if (!flags.out.empty())
      write_file(flags.out, os.str());
    else
      std::cout << (flags.full ? os.str() : truncate_csv(os.str()));
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", flags.out, "Write the output to this file instead of stdout");
  cmd->add_flag("--full", flags.full, "Do not truncate long rationals on stdout");
  cmd->add_flag("--timing", flags.timing, "Include wall-clock milliseconds in the report");
}

GameStructure load_game(const std::string& path) {
  const GameStructure g = game_from_json(read_file(path));
  const auto violations = validate_game(g);
  if (!violations.empty()) {
    std::string msg = "invalid game '" + path + "':";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DomainError(msg);
  }
  return g;
}

StrategyProfile load_profile(const GameStructure& g, const std::string& path) {
  StrategyProfile p = profile_from_json(read_file(path));
  const auto errs = p.validate(g);
  if (!errs.empty()) {
    std::string msg = "invalid profile '" + path + "':";
    for (const auto& e : errs) msg += "\n  " + e;
    throw DomainError(msg);
  }
  return p;
}

int resolve_state(const GameStructure& g, const std::string& token) {
  if (!token.empty() && std::isdigit(static_cast<unsigned char>(token[0]))) {
    const int id = std::stoi(token);
    g.state(id);
    return id;
  }
  return g.state_id_by_name(token);
}

Json values_payload(const GameStructure& g, const ValueVector& v) {
  return Json::parse(values_to_json(g, v)).at("values");
}

// ------------------------------------------------------------------ family

struct FamilyArgs {
  FamilySpec spec;
  std::string delta;
  CommonFlags flags;
};

void run_family(const FamilyArgs& a) {
  FamilySpec spec = a.spec;
  if (!a.delta.empty()) spec.delta_min = Rational::parse(a.delta);
  const GameStructure g = generate_family(spec);
  const std::string doc = game_to_json(g);
  if (!a.flags.out.empty()) {
    // --out receives the bare game document so it can feed the other verbs.
    write_file(a.flags.out, doc);
    ReportSink sink;
    sink.verb = "family";
    CommonFlags echo = a.flags;
    echo.out.clear();
    sink.flags = echo;
    sink.param("name", spec.name);
    if (spec.n) sink.param("n", std::to_string(spec.n));
    if (spec.m) sink.param("m", std::to_string(spec.m));
    if (spec.c) sink.param("c", std::to_string(spec.c));
    if (!a.delta.empty()) sink.param("delta_min", spec.delta_min.str());
    Json payload;
    payload["written"] = a.flags.out;
    payload["states"] = g.states.size();
    payload["delta_min"] = delta_min(g).str();
    sink.emit(payload, "field,value\nwritten," + a.flags.out + "\nstates," +
                           std::to_string(g.states.size()) + "\ndelta_min," + delta_min(g).str() +
                           "\n");
    return;
  }
  if (a.flags.format == "csv") throw DomainError("family emits a JSON game document");
  std::cout << doc;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string game;
  std::string mode = "value-iterate";
  int iters = 100;
  std::string gap;
  long long max_bits = -1;
  CommonFlags flags;
};

void run_solve(const SolveArgs& a) {
  const GameStructure g = load_game(a.game);
  const std::size_t cap =
      a.max_bits >= 0 ? static_cast<std::size_t>(a.max_bits) : default_max_bits();
  ReportSink sink;
  sink.verb = "solve";
  sink.flags = a.flags;
  sink.param("game", a.game);
  sink.param("mode", a.mode);
  if (a.mode == "exact-duel") {
    const auto [n, m] = duel_shape(g);
    const DuelValueTable table = exact_duel_values(n, m, cap);
    sink.emit(Json::parse(duel_table_to_json(table)), values_to_csv(g, table.values));
    return;
  }
  ValueIterationOptions opts;
  opts.budget = a.iters;
  opts.max_bits = cap;
  if (!a.gap.empty()) opts.gap_threshold = Rational::parse(a.gap);
  sink.param("iters", std::to_string(a.iters));
  if (!a.gap.empty()) sink.param("gap", a.gap);
  sink.param("max_bits", std::to_string(cap));
  const IterationTrace trace = value_iterate(g, opts);
  Json payload = Json::parse(trace_to_json(g, trace));
  payload["final"] = values_payload(g, trace.last());
  sink.emit(payload, trace_to_csv(g, trace));
}

// ------------------------------------------------------------------ matrix

struct MatrixArgs {
  std::string x, y, z;
  int m = 0;
  std::string in;
  CommonFlags flags;
};

void run_matrix(const MatrixArgs& a) {
  ReportSink sink;
  sink.verb = "matrix";
  sink.flags = a.flags;
  std::optional<MatrixGame> game;
  if (!a.in.empty()) {
    game = matrix_from_json(read_file(a.in));
    sink.param("in", a.in);
  } else {
    if (a.m < 1) throw DomainError("tri-band matrix needs --m >= 1");
    if (a.x.empty() || a.y.empty() || a.z.empty())
      throw DomainError("tri-band matrix needs --x, --y, --z (or use --in FILE)");
    game = build_tri_matrix(Rational::parse(a.x), Rational::parse(a.y), Rational::parse(a.z), a.m);
    sink.param("x", a.x);
    sink.param("y", a.y);
    sink.param("z", a.z);
    sink.param("m", std::to_string(a.m));
  }
  const MatrixSolution sol = solve_matrix_game(*game);
  Json payload = Json::parse(matrix_solution_to_json(sol));
  std::ostringstream csv;
  csv << "field,value\nvalue," << sol.value.str() << "\nrow_patience," << sol.row_patience.str()
      << "\ncol_patience," << sol.col_patience.str() << '\n';
  for (const auto& [i, p] : sol.row_strategy.entries()) csv << "row." << i << ',' << p.str() << '\n';
  for (const auto& [j, p] : sol.col_strategy.entries()) csv << "col." << j << ',' << p.str() << '\n';
  sink.emit(payload, csv.str());
}

// ----------------------------------------------------------- best-response

struct BestResponseArgs {
  std::string game, profile, from, dump_mdp;
  int player = 0;
  CommonFlags flags;
};

void run_best_response(const BestResponseArgs& a) {
  const GameStructure g = load_game(a.game);
  const StrategyProfile profile = load_profile(g, a.profile);
  const InducedMDP mdp = induce_mdp(g, profile, a.player);
  if (!a.dump_mdp.empty()) write_file(a.dump_mdp, mdp_to_json(mdp));
  const MdpSolution sol = optimal_value(mdp);
  ReportSink sink;
  sink.verb = "best-response";
  sink.flags = a.flags;
  sink.param("game", a.game);
  sink.param("profile", a.profile);
  sink.param("player", std::to_string(a.player));
  Json payload;
  payload["player"] = a.player;
  payload["objective"] = mdp.objective.kind == ObjectiveKind::Reach ? "reach" : "safety";
  Json values = Json::array();
  std::ostringstream csv;
  csv << "state,name,value,action\n";
  for (const auto& s : mdp.states) {
    values.push_back({{"state", s.id},
                      {"name", s.name},
                      {"v", sol.values.at(s.id).str()},
                      {"action", sol.policy.at(s.id)}});
    csv << s.id << ',' << s.name << ',' << sol.values.at(s.id).str() << ',' << sol.policy.at(s.id)
        << '\n';
  }
  payload["values"] = values;
  if (!a.from.empty()) {
    const int from = resolve_state(g, a.from);
    const int mapped = mdp.is_product()
                           ? ((from << g.players) | static_cast<int>(alive_mask_at(g, from)))
                           : from;
    payload["from"] = {{"state", from}, {"value", sol.values.at(mapped).str()}};
  }
  sink.emit(payload, csv.str());
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string kind;  // eps-optimal | eps-nash
  std::string game, strategy, profile, reference, from, eps;
  int player = 0;
  bool exact_duel_reference = false;
  CommonFlags flags;
};

ValueVector reference_values(const CheckArgs& a, const GameStructure& g) {
  if (a.exact_duel_reference) {
    const auto [n, m] = duel_shape(g);
    return exact_duel_values(n, m, default_max_bits()).values;
  }
  if (a.reference.empty())
    throw DomainError("check --kind eps-optimal needs --reference FILE or --exact-duel");
  const Json j = Json::parse(read_file(a.reference));
  if (j.contains("values")) return values_from_json(j.dump());
  if (j.contains("result") && j.at("result").contains("values"))
    return values_from_json(j.at("result").dump());
  throw DomainError("no \"values\" array found in '" + a.reference + "'");
}

void run_check(const CheckArgs& a) {
  const GameStructure g = load_game(a.game);
  ReportSink sink;
  sink.verb = "check";
  sink.flags = a.flags;
  sink.param("kind", a.kind);
  sink.param("game", a.game);
  GapReport report;
  if (a.kind == "eps-optimal") {
    if (a.strategy.empty() || a.player == 0)
      throw DomainError("check --kind eps-optimal needs --strategy FILE and --player N");
    sink.param("strategy", a.strategy);
    sink.param("player", std::to_string(a.player));
    const StationaryStrategy s = stationary_strategy_from_json(read_file(a.strategy));
    report = optimality_gap(g, a.player, s, reference_values(a, g));
  } else {
    if (a.profile.empty()) throw DomainError("check --kind eps-nash needs --profile FILE");
    sink.param("profile", a.profile);
    const StrategyProfile profile = load_profile(g, a.profile);
    std::optional<int> from;
    if (!a.from.empty()) {
      from = resolve_state(g, a.from);
      sink.param("from", a.from);
    }
    report = nash_gap(g, profile, from);
  }
  Json payload = Json::parse(gap_report_to_json(report));
  if (!a.eps.empty()) {
    const Rational eps = Rational::parse(a.eps);
    sink.param("eps", a.eps);
    payload["within_eps"] = report.max_gap() <= eps;
  }
  sink.emit(payload, gap_report_to_csv(report));
}

// ---------------------------------------------------------------- patience

struct PatienceArgs {
  std::string strategy, profile;
  CommonFlags flags;
};

void run_patience(const PatienceArgs& a) {
  ReportSink sink;
  sink.verb = "patience";
  sink.flags = a.flags;
  Rational patience;
  Integer roundedness;
  if (!a.strategy.empty()) {
    sink.param("strategy", a.strategy);
    const Json j = Json::parse(read_file(a.strategy));
    if (j.value("kind", "stationary") == "player-stationary") {
      const StrategyProfile p =
          profile_from_json("{\"strategies\":[" + j.dump() + "]}");
      std::tie(patience, roundedness) =
          strategy_patience(std::get<std::vector<PlayerStationaryStrategy>>(p.strategies).front());
    } else {
      std::tie(patience, roundedness) = strategy_patience(stationary_strategy_from_json(j.dump()));
    }
  } else if (!a.profile.empty()) {
    sink.param("profile", a.profile);
    std::tie(patience, roundedness) = profile_patience(profile_from_json(read_file(a.profile)));
  } else {
    throw DomainError("patience needs --strategy FILE or --profile FILE");
  }
  Json payload;
  payload["patience"] = patience.str();
  payload["roundedness"] = integer_str(roundedness);
  sink.emit(payload, "field,value\npatience," + patience.str() + "\nroundedness," +
                         integer_str(roundedness) + "\n");
}

// ------------------------------------------------------------------- round

struct RoundArgs {
  std::string profile, q;
  CommonFlags flags;
};

void run_round(const RoundArgs& a) {
  const StrategyProfile profile = profile_from_json(read_file(a.profile));
  const Integer q = parse_integer(a.q);
  const StrategyProfile rounded = round_profile(profile, q);
  const std::string doc = profile_to_json(rounded);
  if (!a.flags.out.empty()) {
    write_file(a.flags.out, doc);
    ReportSink sink;
    sink.verb = "round";
    CommonFlags echo = a.flags;
    echo.out.clear();
    sink.flags = echo;
    sink.param("profile", a.profile);
    sink.param("q", a.q);
    Json payload;
    payload["written"] = a.flags.out;
    sink.emit(payload, "field,value\nwritten," + a.flags.out + "\n");
    return;
  }
  if (a.flags.format == "csv") throw DomainError("round emits a JSON profile document");
  std::cout << doc;
}

// ------------------------------------------------------------------ bounds

struct BoundsArgs {
  std::string which, eps, delta;
  int n = 0, k = 0, m = 0, j = 0;
  CommonFlags flags;
};

void run_bounds(const BoundsArgs& a) {
  BoundReport r;
  if (a.which == "ell") {
    r = bound_ell(a.n, a.k, Rational::parse(a.eps), Rational::parse(a.delta));
  } else if (a.which == "q") {
    r = bound_roundedness_q(a.n, a.k, a.m, Rational::parse(a.eps), Rational::parse(a.delta));
  } else if (a.which == "duel-value") {
    r = bound_duel_value(a.n, a.m, a.j);
  } else if (a.which == "duel-patience") {
    r = bound_duel_patience(a.n, a.m, a.j);
  } else if (a.which == "safety-duel-patience") {
    r = bound_safety_duel_patience(Rational::parse(a.delta), a.n);
  } else {
    throw DomainError(
        "bounds --which must be one of ell, q, duel-value, duel-patience, safety-duel-patience");
  }
  ReportSink sink;
  sink.verb = "bounds";
  sink.flags = a.flags;
  sink.param("which", a.which);
  for (const auto& [k, v] : r.params) sink.param(k, v);
  sink.emit(Json::parse(bound_report_to_json(r)), bound_report_to_csv(r));
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string game, profile, from;
  long long horizon = 10000, episodes = 100000, seed = 0;
  CommonFlags flags;
};

void run_simulate(const SimulateArgs& a) {
  const GameStructure g = load_game(a.game);
  const StrategyProfile profile = load_profile(g, a.profile);
  const int from = a.from.empty() ? g.states.front().id : resolve_state(g, a.from);
  const SimulationResult res =
      simulate_play(g, profile, from, a.horizon, a.episodes, static_cast<std::uint64_t>(a.seed));
  ReportSink sink;
  sink.verb = "simulate";
  sink.flags = a.flags;
  sink.param("game", a.game);
  sink.param("profile", a.profile);
  sink.param("from", std::to_string(from));
  sink.param("horizon", std::to_string(a.horizon));
  sink.param("episodes", std::to_string(a.episodes));
  sink.param("seed", std::to_string(a.seed));
  sink.emit(Json::parse(simulation_to_json(res)), simulation_to_csv(res));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact toolkit for concurrent stochastic games with reachability and safety objectives"};
  app.require_subcommand(1);

  FamilyArgs family;
  auto* cmd_family = app.add_subcommand("family", "Generate a game family instance");
  cmd_family->add_option("--name", family.spec.name, "Family name")
      ->required()
      ->check(CLI::IsMember({"purgatory", "purgatory-duel", "three-state-duel",
                             "restricted-three-state-duel", "safety-duel"}));
  cmd_family->add_option("--n", family.spec.n, "States per side");
  cmd_family->add_option("--m", family.spec.m, "Actions per player");
  cmd_family->add_option("--c", family.spec.c, "Safety-duel chain parameter");
  cmd_family->add_option("--delta", family.delta, "Safety-duel delta_min as num/den");
  add_common(cmd_family, family.flags);

  SolveArgs solve;
  auto* cmd_solve =
      app.add_subcommand("solve", "Solve a game (exact duel values or value iteration)");
  cmd_solve->add_option("--game", solve.game, "Game JSON file")->required();
  cmd_solve->add_option("--mode", solve.mode, "exact-duel or value-iterate")
      ->check(CLI::IsMember({"exact-duel", "value-iterate"}));
  cmd_solve->add_option("--iters", solve.iters, "Iteration budget");
  cmd_solve->add_option("--gap", solve.gap, "Stall threshold (heuristic stop, not a certificate)");
  cmd_solve->add_option("--max-bits", solve.max_bits, "Bit cap per rational (0 = unlimited)");
  add_common(cmd_solve, solve.flags);

  MatrixArgs matrix;
  auto* cmd_matrix = app.add_subcommand("matrix", "Solve a zero-sum matrix game exactly");
  cmd_matrix->add_option("--x", matrix.x, "Below-diagonal entry");
  cmd_matrix->add_option("--y", matrix.y, "Diagonal entry");
  cmd_matrix->add_option("--z", matrix.z, "Above-diagonal entry");
  cmd_matrix->add_option("--m", matrix.m, "Tri-band size");
  cmd_matrix->add_option("--in", matrix.in, "Matrix JSON file (grid of num/den strings)");
  add_common(cmd_matrix, matrix.flags);

  BestResponseArgs br;
  auto* cmd_br = app.add_subcommand("best-response", "Exact best reply against a fixed profile");
  cmd_br->add_option("--game", br.game, "Game JSON file")->required();
  cmd_br->add_option("--profile", br.profile, "Profile JSON file")->required();
  cmd_br->add_option("--player", br.player, "Deviating player")->required();
  cmd_br->add_option("--from", br.from, "Report the value from this state (id or name)");
  cmd_br->add_option("--dump-mdp", br.dump_mdp, "Also write the induced MDP as JSON to this file");
  add_common(cmd_br, br.flags);

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check", "Certify eps-optimality or eps-Nash gaps");
  cmd_check->add_option("--kind", check.kind, "eps-optimal or eps-nash")
      ->required()
      ->check(CLI::IsMember({"eps-optimal", "eps-nash"}));
  cmd_check->add_option("--game", check.game, "Game JSON file")->required();
  cmd_check->add_option("--strategy", check.strategy, "Strategy JSON file (eps-optimal)");
  cmd_check->add_option("--player", check.player, "Player of the strategy (eps-optimal)");
  cmd_check->add_option("--reference", check.reference, "Reference value vector JSON");
  cmd_check->add_flag("--exact-duel", check.exact_duel_reference,
                      "Use exact duel values as the reference");
  cmd_check->add_option("--profile", check.profile, "Profile JSON file (eps-nash)");
  cmd_check->add_option("--from", check.from, "Restrict to this start state (id or name)");
  cmd_check->add_option("--eps", check.eps, "Echo whether all gaps are within eps");
  add_common(cmd_check, check.flags);

  PatienceArgs patience;
  auto* cmd_patience = app.add_subcommand("patience", "Patience and roundedness of a strategy");
  cmd_patience->add_option("--strategy", patience.strategy, "Strategy JSON file");
  cmd_patience->add_option("--profile", patience.profile, "Profile JSON file");
  add_common(cmd_patience, patience.flags);

  RoundArgs round;
  auto* cmd_round = app.add_subcommand("round", "Round a profile to denominator q");
  cmd_round->add_option("--profile", round.profile, "Profile JSON file")->required();
  cmd_round->add_option("--q", round.q, "Common denominator")->required();
  add_common(cmd_round, round.flags);

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Closed-form bound calculators");
  cmd_bounds->add_option("--which", bounds.which, "Bound name")->required();
  cmd_bounds->add_option("--n", bounds.n, "State count");
  cmd_bounds->add_option("--k", bounds.k, "Player count");
  cmd_bounds->add_option("--m", bounds.m, "Action count");
  cmd_bounds->add_option("--j", bounds.j, "Duel level index");
  cmd_bounds->add_option("--eps", bounds.eps, "Epsilon as num/den");
  cmd_bounds->add_option("--delta", bounds.delta, "delta_min as num/den");
  add_common(cmd_bounds, bounds.flags);

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo cross-check of a profile");
  cmd_sim->add_option("--game", sim.game, "Game JSON file")->required();
  cmd_sim->add_option("--profile", sim.profile, "Profile JSON file")->required();
  cmd_sim->add_option("--from", sim.from, "Start state (id or name, default: first state)");
  cmd_sim->add_option("--horizon", sim.horizon, "Steps per episode");
  cmd_sim->add_option("--episodes", sim.episodes, "Episode count");
  cmd_sim->add_option("--seed", sim.seed, "PRNG seed");
  add_common(cmd_sim, sim.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_family->parsed()) run_family(family);
    if (cmd_solve->parsed()) run_solve(solve);
    if (cmd_matrix->parsed()) run_matrix(matrix);
    if (cmd_br->parsed()) run_best_response(br);
    if (cmd_check->parsed()) run_check(check);
    if (cmd_patience->parsed()) run_patience(patience);
    if (cmd_round->parsed()) run_round(round);
    if (cmd_bounds->parsed()) run_bounds(bounds);
    if (cmd_sim->parsed()) run_simulate(sim);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
