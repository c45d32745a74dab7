#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachegame/bestresponse.hpp"
#include "cachegame/core.hpp"
#include "cachegame/enumeration.hpp"
#include "cachegame/lp.hpp"

namespace cachegame {

/// A generated Searcher column. With `relabel` the policy is played under a
/// uniformly random location labeling.
struct SearcherColumn {
  std::shared_ptr<const Policy> policy;
  bool relabel = false;
  /// Win probability against each LP row.
  std::vector<Rational> payoffs;
};

struct SolverOptions {
  /// Rows are orbit representatives and columns are relabeled policies.
  bool reduce_symmetry = true;
  int max_iterations = 10000;
  BestResponseOptions best_response;
};

struct IterationRecord {
  Rational lp_value;
  Rational br_value;
};

struct GameSolution {
  GameConfig cfg;
  Grid grid;
  Rational value;
  HiderMixed hider_mix;
  std::vector<WeightedHider> rows;
  std::vector<SearcherColumn> columns;
  /// (column index, probability) for every column with positive weight.
  std::vector<std::pair<int, Rational>> searcher_mix;
  int iterations = 0;
  std::vector<IterationRecord> trace;
  /// Best response to hider_mix equals value.
  bool hider_certified = false;
  /// searcher_mix wins with probability >= value against every row.
  bool searcher_certified = false;
};

/// Each row's relabelings (or just the row itself) in grid form.
std::vector<std::vector<GridHider>> row_orbits(const std::vector<WeightedHider>& rows,
                                               const Grid& grid, bool relabel);

/// Average win probability of `policy` over each row's member list.
/// OpenMP-parallel over rows; column_payoffs_serial is the reference.
std::vector<Rational> column_payoffs(const Policy& policy,
                                     const std::vector<std::vector<GridHider>>& orbits);
std::vector<Rational> column_payoffs_serial(const Policy& policy,
                                            const std::vector<std::vector<GridHider>>& orbits);

/// Value of the grid-restricted game by double oracle: exact LP over the
/// generated Searcher columns with every grid Hider strategy as a row, and
/// best_response_value as the Searcher oracle.
GameSolution solve_game(const GameConfig& cfg, const Grid& grid, const SolverOptions& opts = {});

/// Serialized solution; policy trees cover the support of hider_mix.
nlohmann::json solution_json(const GameSolution& sol, bool include_trees = true);

/// "n,k,h,m,value"
std::string solution_csv_row(const GameSolution& sol);

}  // namespace cachegame
