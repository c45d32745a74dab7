#include "cachegame/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace cachegame {

namespace {

// Sorted multisets of `size` grid depths drawn from [lo, hi].
void multisets(int size, int lo, int hi, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (size == 0) {
    out.push_back(cur);
    return;
  }
  const int from = cur.empty() ? lo : cur.back();
  for (int d = from; d <= hi; ++d) {
    cur.push_back(d);
    multisets(size - 1, lo, hi, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<WeightedHider> enumerate_grid_hiders(const GameConfig& cfg, const Grid& grid,
                                                 const EnumerationOptions& opts) {
  if (cfg.n < 1 || cfg.k < 1) throw std::invalid_argument("n and k must be positive");
  if (grid.m < 1) throw std::invalid_argument("grid resolution must be positive");
  const int m = grid.m;
  const int lo = opts.allow_zero_depth ? 0 : 1;

  // Location contents indexed by object count, each a sorted grid multiset.
  std::vector<std::vector<std::vector<int>>> by_size(cfg.k + 1);
  for (int c = 1; c <= cfg.k; ++c) {
    std::vector<int> cur;
    multisets(c, lo, m, cur, by_size[c]);
  }

  std::vector<HiderPure> all;
  std::vector<std::vector<int>> assignment(cfg.n);
  std::function<void(int, int, int)> place = [&](int loc, int objects_left, int depth_left) {
    if (loc == cfg.n) {
      if (objects_left != 0) return;
      HiderPure hp;
      hp.sets.resize(cfg.n);
      for (int i = 0; i < cfg.n; ++i) {
        for (int t : assignment[i]) hp.sets[i].push_back(Rational(t, m));
      }
      all.push_back(std::move(hp));
      return;
    }
    assignment[loc].clear();
    place(loc + 1, objects_left, depth_left);
    for (int c = 1; c <= objects_left; ++c) {
      for (const auto& ms : by_size[c]) {
        if (ms.back() > depth_left) continue;
        assignment[loc] = ms;
        place(loc + 1, objects_left - c, depth_left - ms.back());
      }
    }
    assignment[loc].clear();
  };
  place(0, cfg.k, m);

  std::vector<WeightedHider> out;
  if (opts.reduce_symmetry) {
    std::map<HiderPure, std::uint64_t, HiderLess> counts;
    std::map<HiderPure, std::uint64_t, HiderLess> orbit_size;
    for (const auto& hp : all) {
      auto c = canonicalize(hp);
      ++counts[c.canonical];
      orbit_size[c.canonical] = c.orbit_size;
    }
    for (const auto& [hp, count] : counts) {
      if (count != orbit_size[hp]) throw std::logic_error("orbit count mismatch for " + hp.str());
      out.push_back({hp, count});
    }
  } else {
    std::sort(all.begin(), all.end(), hider_less);
    for (auto& hp : all) out.push_back({std::move(hp), 1});
  }
  return out;
}

std::vector<HiderPure> family_D(const Rational& x, const GameConfig& cfg) {
  if (cfg.k != 2) throw std::invalid_argument("family D requires k = 2");
  if (x <= Rational(0) || x >= Rational(1)) {
    throw std::invalid_argument("family D requires 0 < x < 1, got " + x.str());
  }
  std::set<HiderPure, HiderLess> seen;
  std::vector<HiderPure> out;
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = 0; j < cfg.n; ++j) {
      if (i == j) continue;
      HiderPure hp;
      hp.sets.resize(cfg.n);
      hp.sets[i].push_back(x);
      hp.sets[j].push_back(Rational(1) - x);
      if (seen.insert(hp).second) out.push_back(std::move(hp));
    }
  }
  return out;
}

std::vector<HiderPure> family_E(const Rational& x, const GameConfig& cfg) {
  if (cfg.k != 2) throw std::invalid_argument("family E requires k = 2");
  if (x <= Rational(0) || x > Rational(1)) {
    throw std::invalid_argument("family E requires 0 < x <= 1, got " + x.str());
  }
  std::vector<HiderPure> out;
  for (int i = 0; i < cfg.n; ++i) {
    HiderPure hp;
    hp.sets.resize(cfg.n);
    hp.sets[i] = {x, Rational(1)};
    out.push_back(std::move(hp));
  }
  return out;
}

void write_enumeration(std::ostream& os, const std::vector<WeightedHider>& hiders) {
  for (const auto& w : hiders) os << w.strategy.str() << ' ' << w.weight << '\n';
}

}  // namespace cachegame
