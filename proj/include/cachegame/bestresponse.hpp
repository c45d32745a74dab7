#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cachegame/core.hpp"
#include "cachegame/enumeration.hpp"

namespace cachegame {

/// Hider pure strategy in grid units: sets[i] holds sorted depths t in 1..m.
using GridHider = std::vector<std::vector<int>>;

/// Converts to grid units; throws std::invalid_argument on off-grid depths.
GridHider to_grid(const HiderPure& hp, const Grid& grid);
HiderPure from_grid(const GridHider& gh, const Grid& grid);

/// floor(h * m): whole grid steps the Searcher can dig.
int effective_budget(const GameConfig& cfg, const Grid& grid);

/// Parameters of the grid-restricted game.
struct GridGame {
  int n = 1;
  int k = 1;
  int m = 1;
  int budget = 0;

  static GridGame make(const GameConfig& cfg, const Grid& grid);
};

/// What the Searcher knows: per-location dug depth and the depths of the
/// objects found there (grid units).
struct InfoState {
  std::vector<int> dug;
  std::vector<std::vector<int>> found;
  int budget_left = 0;

  static InfoState initial(const GridGame& g);
  int found_count() const;
};

/// True iff hp's objects at or above each dig front are exactly `found`.
bool consistent(const GridHider& hp, const InfoState& s);

/// Dig location `loc` one step at a time up to depth `target`, halting
/// early at the first depth where something is revealed.
struct DigAction {
  int loc = -1;
  int target = 0;

  bool is_stop() const { return loc < 0; }
  friend bool operator==(const DigAction&, const DigAction&) = default;
};

/// Applies `a` against hp, updating s. Returns the depth at which objects
/// were revealed (0 if none) and how many.
std::pair<int, int> apply_action(InfoState& s, const DigAction& a, const GridHider& hp);

/// Deterministic adaptive Searcher policy in the grid game.
class Policy {
 public:
  explicit Policy(GridGame g) : game_(g) {}
  virtual ~Policy() = default;

  /// Next action at s; a stop action ends the search.
  virtual DigAction next(const InfoState& s) const = 0;
  virtual std::string describe() const = 0;

  const GridGame& game() const { return game_; }

 protected:
  GridGame game_;
};

/// Scans locations in index order, digging each to the deepest depth where
/// an unfound object could still lie given the objects found elsewhere.
class ScanPolicy : public Policy {
 public:
  using Policy::Policy;
  DigAction next(const InfoState& s) const override;
  std::string describe() const override { return "scan"; }
};

/// Policy read from a best-response table; states missing from the table
/// fall back to the scan rule.
class TablePolicy : public Policy {
 public:
  struct Entry {
    std::int16_t pos = -1;  // location, or canonical slot when folded
    std::int16_t target = 0;
  };

  TablePolicy(GridGame g, bool folded, std::unordered_map<std::string, Entry> table)
      : Policy(g), folded_(folded), table_(std::move(table)) {}

  DigAction next(const InfoState& s) const override;
  std::string describe() const override;
  std::size_t table_size() const { return table_.size(); }

 private:
  bool folded_;
  std::unordered_map<std::string, Entry> table_;
};

/// Plays `policy` against hp; true iff every object is found.
bool policy_wins(const Policy& policy, const GridHider& hp);

struct BestResponseOptions {
  /// Merge states that differ by a location relabeling. Only used when the
  /// Hider mix is symmetric.
  bool fold_symmetry = true;
  /// Dig one grid step per action instead of jumping to the next depth
  /// where a consistent strategy has an object.
  bool unit_steps = false;
};

struct BestResponse {
  Rational value;
  std::shared_ptr<const TablePolicy> policy;
  std::size_t states = 0;
  bool folded = false;
};

/// Exact maximum probability, over adaptive grid Searcher policies, of
/// finding every object against mu within the effective budget.
BestResponse best_response_value(const HiderMixed& mu, const GameConfig& cfg, const Grid& grid,
                                 const BestResponseOptions& opts = {});

/// Explicit policy tree restricted to the observations that some hider in
/// `hiders` can produce.
struct PolicyNode {
  InfoState state;
  DigAction action;
  bool won = false;
  /// Keyed by (revealed depth, revealed count); depth 0 means nothing found.
  std::vector<std::pair<std::pair<int, int>, PolicyNode>> children;
};

PolicyNode extract_policy_tree(const Policy& policy, const std::vector<GridHider>& hiders);

nlohmann::json policy_tree_json(const PolicyNode& node, const Grid& grid);

}  // namespace cachegame
