#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cachegame/rational.hpp"

namespace cachegame {

/// Number of locations, number of objects and the Searcher's dig budget.
struct GameConfig {
  int n = 1;
  int k = 1;
  Rational h = 1;

  /// Throws std::invalid_argument unless n, k >= 1 and 1 <= h < n.
  void validate() const;
};

/// Multiset of burial depths in one location, sorted ascending.
using DepthSet = std::vector<Rational>;

/// A Hider pure strategy: one depth multiset per location.
struct HiderPure {
  std::vector<DepthSet> sets;

  HiderPure() = default;
  explicit HiderPure(std::vector<DepthSet> s);

  int locations() const { return static_cast<int>(sets.size()); }
  int objects() const;
  /// Sum over locations of the deepest object (empty locations count 0).
  Rational max_depth_sum() const;

  /// Text form, e.g. "({1/2,2/3},1/3,0)".
  std::string str() const;
  static HiderPure parse(std::string_view text);

  friend bool operator==(const HiderPure&, const HiderPure&) = default;
};

/// Ordering on single locations used for canonical forms: non-empty sets
/// compare lexicographically, and the empty set sorts after every
/// non-empty set.
bool location_less(const DepthSet& a, const DepthSet& b);

/// Lexicographic order over location sequences under location_less.
bool hider_less(const HiderPure& a, const HiderPure& b);

struct HiderLess {
  bool operator()(const HiderPure& a, const HiderPure& b) const { return hider_less(a, b); }
};

/// Returns a description of the first violated invariant, or nullopt when
/// the strategy is valid for cfg. Depth 0 is rejected unless allow_zero_depth.
std::optional<std::string> validate_hider(const HiderPure& s, const GameConfig& cfg,
                                          bool allow_zero_depth = false);

struct CanonicalHider {
  HiderPure canonical;
  std::uint64_t orbit_size = 1;
};

/// Least relabeling of s under hider_less, plus the number of distinct
/// relabelings.
CanonicalHider canonicalize(const HiderPure& s);

/// All distinct relabelings of s, in hider_less order.
std::vector<HiderPure> orbit(const HiderPure& s);

/// Applies a location permutation: result.sets[perm[i]] = s.sets[i].
HiderPure relabel(const HiderPure& s, const std::vector<int>& perm);

struct MixEntry {
  HiderPure strategy;
  Rational prob;
};

/// Finitely supported Hider mixed strategy.
struct HiderMixed {
  std::vector<MixEntry> support;

  /// Equal weight on every listed strategy (duplicates rejected).
  static HiderMixed uniform(const std::vector<HiderPure>& strategies);

  /// Throws std::invalid_argument on non-positive or non-normalized
  /// probabilities, duplicate entries, or invalid strategies.
  void validate(const GameConfig& cfg) const;

  /// True when every relabeling of a support strategy carries the same
  /// probability.
  bool is_symmetric() const;
};

/// Per-location dug depth.
struct DigProfile {
  std::vector<Rational> depths;

  Rational total() const;
  std::string str() const;
};

}  // namespace cachegame
