#pragma once

#include <string>

#include "csg/analysis.hpp"
#include "csg/families.hpp"
#include "csg/game.hpp"
#include "csg/matrix_game.hpp"
#include "csg/mdp.hpp"
#include "csg/strategy.hpp"
#include "csg/value_iteration.hpp"

namespace csg {

// JSON codecs for every file format the toolkit reads or writes. All
// probabilities and values cross this boundary as "num/den" strings in lowest
// terms; field order is fixed so identical inputs serialize byte-identically.
// Parse failures and semantic violations raise DomainError.

std::string game_to_json(const GameStructure& g);
GameStructure game_from_json(const std::string& text);

std::string strategy_to_json(const StationaryStrategy& s);
std::string strategy_to_json(const PlayerStationaryStrategy& s);
std::string profile_to_json(const StrategyProfile& p);
StrategyProfile profile_from_json(const std::string& text);
/// Accepts either a single strategy document or a one-strategy profile.
StationaryStrategy stationary_strategy_from_json(const std::string& text);

std::string values_to_json(const GameStructure& g, const ValueVector& v);
std::string values_to_csv(const GameStructure& g, const ValueVector& v);
ValueVector values_from_json(const std::string& text);

std::string trace_to_json(const GameStructure& g, const IterationTrace& trace);
std::string trace_to_csv(const GameStructure& g, const IterationTrace& trace);

std::string matrix_to_json(const MatrixGame& m);
MatrixGame matrix_from_json(const std::string& text);
std::string matrix_solution_to_json(const MatrixSolution& sol);

std::string mdp_to_json(const InducedMDP& mdp);
std::string chain_to_json(const MarkovChain& mc);

std::string duel_table_to_json(const DuelValueTable& table);

std::string gap_report_to_json(const GapReport& r);
std::string gap_report_to_csv(const GapReport& r);

std::string bound_report_to_json(const BoundReport& r);
std::string bound_report_to_csv(const BoundReport& r);

std::string simulation_to_json(const SimulationResult& r);
std::string simulation_to_csv(const SimulationResult& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace csg
