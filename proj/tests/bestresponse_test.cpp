#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cachegame/bestresponse.hpp"
#include "cachegame/enumeration.hpp"
#include "cachegame/strategies.hpp"
#include "oracle.hpp"

using namespace cachegame;

namespace {

HiderPure H(const char* text) { return HiderPure::parse(text); }

HiderMixed random_mix(const std::vector<WeightedHider>& pool, std::mt19937& rng, std::size_t max_support) {
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t size = 1 + rng() % std::min(max_support, pool.size());
  std::vector<long> w(size);
  long total = 0;
  for (auto& x : w) total += (x = 1 + static_cast<long>(rng() % 5));
  HiderMixed mix;
  for (std::size_t i = 0; i < size; ++i) mix.support.push_back({pool[idx[i]].strategy, Rational(w[i], total)});
  return mix;
}

Rational mass(const HiderMixed& mix, oracle::Mask set) {
  Rational v;
  for (std::size_t i = 0; i < mix.support.size(); ++i) {
    if (set >> i & 1) v += mix.support[i].prob;
  }
  return v;
}

}  // namespace

TEST(EffectiveBudget, Examples) {
  EXPECT_EQ(effective_budget({4, 2, Rational(11, 6)}, Grid{6}), 11);
  EXPECT_EQ(effective_budget({4, 2, Rational(7, 4)}, Grid{20}), 35);
  EXPECT_EQ(effective_budget({4, 2, Rational(11, 5)}, Grid{15}), 33);
  EXPECT_EQ(effective_budget({4, 2, Rational(11, 5)}, Grid{8}), 17);
}

TEST(Consistent, Examples) {
  const Grid g{3};
  InfoState s;
  s.dug = {2, 0, 0, 0};
  s.found = {{1}, {}, {}, {}};
  EXPECT_TRUE(consistent(to_grid(H("({1/3,1},0,0,0)"), g), s));
  s.dug = {3, 0, 0, 0};
  EXPECT_FALSE(consistent(to_grid(H("({1/3,1},0,0,0)"), g), s));
  s.dug = {2, 0, 0, 0};
  s.found = {{}, {}, {}, {}};
  EXPECT_TRUE(consistent(to_grid(H("(0,2/3,0,0)"), g), s));
  EXPECT_THROW(to_grid(H("(1/2,0,0,0)"), g), std::invalid_argument);
}

TEST(ApplyAction, HaltsAtFirstReveal) {
  const GridGame game{2, 2, 4, 8};
  InfoState s = InfoState::initial(game);
  const GridHider hp = to_grid(H("({1/4,3/4},0)"), Grid{4});
  auto [depth, count] = apply_action(s, DigAction{0, 4}, hp);
  EXPECT_EQ(depth, 1);
  EXPECT_EQ(count, 1);
  EXPECT_EQ(s.dug[0], 1);
  EXPECT_EQ(s.budget_left, 7);
  std::tie(depth, count) = apply_action(s, DigAction{0, 4}, hp);
  EXPECT_EQ(depth, 3);
  EXPECT_EQ(s.found_count(), 2);
  EXPECT_EQ(s.dug[0] + s.budget_left, 8);
}

TEST(BestResponse, LemmaMixes) {
  for (int id : {2, 3, 4}) {
    const auto& spec = lemma_spec(id);
    const auto br = best_response_value(lemma_hider(id), {4, 2, spec.h_lo}, Grid{spec.grid_m});
    EXPECT_EQ(br.value, spec.value) << "lemma " << id;
    EXPECT_TRUE(br.folded);
  }
}

TEST(BestResponse, PointMass) {
  const GameConfig cfg{4, 1, Rational(1)};
  const auto br = best_response_value(HiderMixed::uniform({H("(1,0,0,0)")}), cfg, Grid{1});
  EXPECT_EQ(br.value, Rational(1));
  EXPECT_THROW(best_response_value(HiderMixed{}, cfg, Grid{1}), std::invalid_argument);
  EXPECT_THROW(best_response_value(HiderMixed::uniform({H("(1/2,0,0,0)")}), cfg, Grid{1}), std::invalid_argument);
}

TEST(BestResponse, SameLocationFamilyGivesFloorHOverN) {
  for (int n = 2; n <= 5; ++n) {
    for (int hn = 2 * n - 1; hn >= 2; --hn) {
      const GameConfig cfg{n, 2, Rational(hn, 2)};
      const auto br = best_response_value(HiderMixed::uniform(family_E(Rational(1), cfg)), cfg, Grid{2});
      EXPECT_EQ(br.value, Rational(Rational(hn, 2).floor().get_si(), n)) << n << " " << hn;
    }
  }
}

TEST(BestResponse, VariantsAgreeAndPolicyRealizesValue) {
  std::mt19937 rng(5);
  for (int n = 2; n <= 3; ++n) {
    for (int k = 1; k <= 2; ++k) {
      for (int m = 1; m <= 3; ++m) {
        for (const Rational h : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
          if (h >= Rational(n)) continue;
          const GameConfig cfg{n, k, h};
          const auto pool = enumerate_grid_hiders(cfg, Grid{m});
          if (pool.empty()) continue;
          for (int trial = 0; trial < 4; ++trial) {
            const HiderMixed mix = random_mix(pool, rng, 6);
            const auto macro = best_response_value(mix, cfg, Grid{m}, {.fold_symmetry = false});
            const auto unit = best_response_value(mix, cfg, Grid{m}, {.fold_symmetry = false, .unit_steps = true});
            EXPECT_EQ(macro.value, unit.value);
            Rational realized;
            for (const auto& e : mix.support) {
              if (policy_wins(*macro.policy, to_grid(e.strategy, Grid{m}))) realized += e.prob;
            }
            EXPECT_EQ(realized, macro.value);

            // Symmetrize to exercise folding.
            std::vector<HiderPure> sym;
            for (const auto& e : mix.support) {
              for (const auto& o : orbit(e.strategy)) {
                if (std::find(sym.begin(), sym.end(), o) == sym.end()) sym.push_back(o);
              }
            }
            const auto smix = HiderMixed::uniform(sym);
            const auto folded = best_response_value(smix, cfg, Grid{m});
            const auto plain = best_response_value(smix, cfg, Grid{m}, {.fold_symmetry = false});
            EXPECT_TRUE(folded.folded);
            EXPECT_EQ(folded.value, plain.value);
            Rational frealized;
            for (const auto& e : smix.support) {
              if (policy_wins(*folded.policy, to_grid(e.strategy, Grid{m}))) frealized += e.prob;
            }
            EXPECT_EQ(frealized, folded.value);
          }
        }
      }
    }
  }
}

TEST(BestResponse, PermutationEquivariant) {
  std::mt19937 rng(11);
  const GameConfig cfg{4, 2, Rational(7, 4)};
  const auto pool = enumerate_grid_hiders(cfg, Grid{4});
  for (int trial = 0; trial < 10; ++trial) {
    const HiderMixed mix = random_mix(pool, rng, 8);
    const Rational base = best_response_value(mix, cfg, Grid{4}).value;
    std::vector<int> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    HiderMixed moved;
    for (const auto& e : mix.support) moved.support.push_back({relabel(e.strategy, perm), e.prob});
    EXPECT_EQ(best_response_value(moved, cfg, Grid{4}).value, base);
  }
}

TEST(BestResponse, MonotoneInBudget) {
  std::mt19937 rng(23);
  const auto pool = enumerate_grid_hiders({3, 2, Rational(1)}, Grid{4});
  for (int trial = 0; trial < 10; ++trial) {
    const HiderMixed mix = random_mix(pool, rng, 10);
    Rational prev(0);
    for (int b = 4; b < 12; ++b) {
      const Rational v = best_response_value(mix, {3, 2, Rational(b, 4)}, Grid{4}).value;
      EXPECT_GE(v, prev);
      EXPECT_LE(v, Rational(1));
      prev = v;
    }
  }
}

TEST(BestResponse, MatchesExhaustivePolicyTrees) {
  std::mt19937 rng(3);
  for (int n = 2; n <= 3; ++n) {
    for (int k = 1; k <= 2; ++k) {
      for (int m = 1; m <= 2; ++m) {
        for (const Rational h : {Rational(1), Rational(5, 4), Rational(3, 2), Rational(2), Rational(5, 2)}) {
          if (h >= Rational(n)) continue;
          const GameConfig cfg{n, k, h};
          const auto pool = enumerate_grid_hiders(cfg, Grid{m});
          if (pool.empty()) continue;
          for (int trial = 0; trial < 6; ++trial) {
            const HiderMixed mix = random_mix(pool, rng, pool.size());
            std::vector<GridHider> hs;
            for (const auto& e : mix.support) hs.push_back(to_grid(e.strategy, Grid{m}));
            oracle::PolicyTrees trees(hs, n, m, effective_budget(cfg, Grid{m}));
            Rational best;
            for (auto s : trees.win_sets()) best = std::max(best, mass(mix, s));
            EXPECT_EQ(best_response_value(mix, cfg, Grid{m}).value, best);
          }
        }
      }
    }
  }
}

TEST(PolicyTree, ExportCoversSupport) {
  const auto& spec = lemma_spec(2);
  const GameConfig cfg{4, 2, spec.h_lo};
  const HiderMixed mix = lemma_hider(2);
  const auto br = best_response_value(mix, cfg, Grid{6});
  std::vector<GridHider> hs;
  for (const auto& e : mix.support) hs.push_back(to_grid(e.strategy, Grid{6}));
  const PolicyNode root = extract_policy_tree(*br.policy, hs);
  const auto j = policy_tree_json(root, Grid{6});
  EXPECT_TRUE(j.contains("action"));
  EXPECT_TRUE(j.contains("children"));
  int wins = 0;
  std::function<void(const PolicyNode&)> walk = [&](const PolicyNode& node) {
    if (node.children.empty()) wins += node.won ? 1 : 0;
    for (const auto& [obs, child] : node.children) walk(child);
  };
  walk(root);
  EXPECT_GE(wins, 1);
}

TEST(ScanPolicy, FindsSingleObjects) {
  const GameConfig cfg{3, 1, Rational(2)};
  const GridGame game = GridGame::make(cfg, Grid{2});
  ScanPolicy scan(game);
  EXPECT_TRUE(policy_wins(scan, to_grid(H("(1,0,0)"), Grid{2})));
  EXPECT_TRUE(policy_wins(scan, to_grid(H("(0,1,0)"), Grid{2})));
  EXPECT_FALSE(policy_wins(scan, to_grid(H("(0,0,1)"), Grid{2})));
}
