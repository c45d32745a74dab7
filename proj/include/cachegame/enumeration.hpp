#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cachegame/core.hpp"

namespace cachegame {

/// Permissible Hider depths are t/m for t = 1..m.
struct Grid {
  int m = 1;
};

struct WeightedHider {
  HiderPure strategy;
  std::uint64_t weight = 1;
};

struct EnumerationOptions {
  bool reduce_symmetry = false;
  /// Also admit depth 0 (a strictly dominated placement).
  bool allow_zero_depth = false;
};

/// Every valid Hider pure strategy with depths on the grid, in hider_less
/// order. With reduce_symmetry, one canonical representative per orbit,
/// weighted by orbit size.
std::vector<WeightedHider> enumerate_grid_hiders(const GameConfig& cfg, const Grid& grid,
                                                 const EnumerationOptions& opts = {});

/// One object at depth x and the other at 1-x, in distinct locations.
/// Requires k = 2 and 0 < x < 1.
std::vector<HiderPure> family_D(const Rational& x, const GameConfig& cfg);

/// Both objects in one location, at depths x and 1. Requires k = 2, 0 < x <= 1.
std::vector<HiderPure> family_E(const Rational& x, const GameConfig& cfg);

/// One "<strategy> <weight>" line per entry.
void write_enumeration(std::ostream& os, const std::vector<WeightedHider>& hiders);

}  // namespace cachegame
