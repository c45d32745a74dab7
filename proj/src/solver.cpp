#include "cachegame/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace cachegame {

std::vector<std::vector<GridHider>> row_orbits(const std::vector<WeightedHider>& rows,
                                               const Grid& grid, bool relabel) {
  std::vector<std::vector<GridHider>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<GridHider> members;
    if (relabel) {
      for (const auto& hp : orbit(r.strategy)) members.push_back(to_grid(hp, grid));
    } else {
      members.push_back(to_grid(r.strategy, grid));
    }
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<Rational> column_payoffs_serial(const Policy& policy,
                                            const std::vector<std::vector<GridHider>>& orbits) {
  std::vector<Rational> out;
  out.reserve(orbits.size());
  for (const auto& members : orbits) {
    long wins = 0;
    for (const auto& hp : members) wins += policy_wins(policy, hp) ? 1 : 0;
    out.emplace_back(wins, static_cast<long>(members.size()));
  }
  return out;
}

std::vector<Rational> column_payoffs(const Policy& policy,
                                     const std::vector<std::vector<GridHider>>& orbits) {
  const long rows = static_cast<long>(orbits.size());
  std::vector<long> wins(rows, 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long r = 0; r < rows; ++r) {
    long w = 0;
    for (const auto& hp : orbits[r]) w += policy_wins(policy, hp) ? 1 : 0;
    wins[r] = w;
  }
  std::vector<Rational> out;
  out.reserve(rows);
  for (long r = 0; r < rows; ++r) out.emplace_back(wins[r], static_cast<long>(orbits[r].size()));
  return out;
}

namespace {

HiderMixed expand_mix(const std::vector<WeightedHider>& rows, const std::vector<Rational>& row_mix,
                      bool reduced) {
  std::vector<MixEntry> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (row_mix[r] == Rational(0)) continue;
    if (reduced) {
      const auto members = orbit(rows[r].strategy);
      const Rational p = row_mix[r] / Rational(static_cast<long>(members.size()));
      for (const auto& hp : members) entries.push_back({hp, p});
    } else {
      entries.push_back({rows[r].strategy, row_mix[r]});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const MixEntry& a, const MixEntry& b) { return hider_less(a.strategy, b.strategy); });
  HiderMixed mix;
  mix.support = std::move(entries);
  return mix;
}

Matrix build_matrix(const std::vector<SearcherColumn>& columns, std::size_t rows) {
  Matrix m(rows, std::vector<Rational>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m[r][c] = columns[c].payoffs[r];
  }
  return m;
}

}  // namespace

GameSolution solve_game(const GameConfig& cfg, const Grid& grid, const SolverOptions& opts) {
  cfg.validate();
  const bool reduced = opts.reduce_symmetry;
  GameSolution sol;
  sol.cfg = cfg;
  sol.grid = grid;
  sol.rows = enumerate_grid_hiders(cfg, grid, {.reduce_symmetry = reduced});
  const auto orbits = row_orbits(sol.rows, grid, reduced);
  const GridGame game = GridGame::make(cfg, grid);

  auto initial = std::make_shared<ScanPolicy>(game);
  sol.columns.push_back({initial, reduced, column_payoffs(*initial, orbits)});
  IncrementalMatrixGame lpstate(sol.rows.size());
  lpstate.add_column(sol.columns.back().payoffs);

  for (int iter = 1;; ++iter) {
    if (iter > opts.max_iterations) throw std::runtime_error("double oracle did not converge");
    const MatrixGameSolution lp = lpstate.solution();
    HiderMixed mix = expand_mix(sol.rows, lp.row_mix, reduced);
    BestResponse br = best_response_value(mix, cfg, grid, opts.best_response);
    sol.trace.push_back({lp.value, br.value});
    sol.iterations = iter;

    if (br.value <= lp.value) {
      if (br.value != lp.value) throw std::logic_error("best response below the LP value");
      sol.value = lp.value;
      sol.hider_mix = std::move(mix);
      for (std::size_t c = 0; c < sol.columns.size(); ++c) {
        if (lp.col_mix[c] != Rational(0)) sol.searcher_mix.emplace_back(static_cast<int>(c), lp.col_mix[c]);
      }
      sol.hider_certified = true;
      const Matrix matrix = build_matrix(sol.columns, sol.rows.size());
      sol.searcher_certified = col_guarantee(matrix, lp.col_mix) >= sol.value &&
                               row_guarantee(matrix, lp.row_mix) == sol.value;
      return sol;
    }

    SearcherColumn col{br.policy, reduced, column_payoffs(*br.policy, orbits)};
    Rational realized;
    for (std::size_t r = 0; r < sol.rows.size(); ++r) realized += lp.row_mix[r] * col.payoffs[r];
    if (realized != br.value) {
      throw std::logic_error("best-response policy realizes " + realized.str() + " but the DP value is " +
                             br.value.str());
    }
    for (const auto& existing : sol.columns) {
      if (existing.payoffs == col.payoffs) throw std::logic_error("best response duplicated an existing column");
    }
    lpstate.add_column(col.payoffs);
    sol.columns.push_back(std::move(col));
  }
}

nlohmann::json solution_json(const GameSolution& sol, bool include_trees) {
  nlohmann::json j;
  j["config"] = {{"n", sol.cfg.n}, {"k", sol.cfg.k}, {"h", sol.cfg.h.str()}};
  j["grid"] = {{"m", sol.grid.m}};
  j["value"] = sol.value.str();
  j["hider_mix"] = nlohmann::json::array();
  std::vector<GridHider> support;
  for (const auto& e : sol.hider_mix.support) {
    j["hider_mix"].push_back({{"strategy", e.strategy.str()}, {"prob", e.prob.str()}});
    support.push_back(to_grid(e.strategy, sol.grid));
  }
  j["searcher_policies"] = nlohmann::json::array();
  for (const auto& [c, p] : sol.searcher_mix) {
    const auto& col = sol.columns[c];
    nlohmann::json pj = {{"prob", p.str()}, {"relabel", col.relabel}, {"policy", col.policy->describe()}};
    if (include_trees) pj["tree"] = policy_tree_json(extract_policy_tree(*col.policy, support), sol.grid);
    j["searcher_policies"].push_back(std::move(pj));
  }
  j["iterations"] = sol.iterations;
  return j;
}

std::string solution_csv_row(const GameSolution& sol) {
  return std::to_string(sol.cfg.n) + "," + std::to_string(sol.cfg.k) + "," + sol.cfg.h.str() + "," +
         std::to_string(sol.grid.m) + "," + sol.value.str();
}

}  // namespace cachegame
