#include <set>

#include <gtest/gtest.h>

#include "cachegame/bestresponse.hpp"
#include "cachegame/strategies.hpp"

using namespace cachegame;

namespace {

HiderPure H(const char* text) { return HiderPure::parse(text); }
DigProfile P(std::vector<Rational> d) { return DigProfile{std::move(d)}; }

}  // namespace

TEST(IntelligentSearch, DigsToCaps) {
  const GameConfig cfg{2, 2, Rational(5, 3)};
  // First object at 1/3 in L1; the second at 2/3 in L2 needs 1 + 2/3.
  EXPECT_EQ(is_dig({0, Rational(1, 3)}, P({Rational(1, 3), 0}), {0, 1}, cfg, H("(1/3,2/3)")), DigResult::win);
  EXPECT_EQ(is_dig({0, Rational(1, 3)}, P({Rational(1, 3), 0}), {0, 1}, {2, 2, Rational(8, 5)}, H("(1/3,2/3)")),
            DigResult::lose);
  // Same location, second object deeper.
  EXPECT_EQ(is_dig({0, Rational(1, 3)}, P({Rational(1, 3), 0}), {0, 1}, cfg, H("({1/3,1},0)")), DigResult::win);
  EXPECT_THROW(is_dig({1, Rational(1)}, P({0, Rational(1)}), {0, 1}, {2, 2, Rational(1)}, H("(0,{1,1})")),
               std::logic_error);
}

TEST(IntelligentSearch, SkipsLocationsAlreadyDugPastTheirCap) {
  const GameConfig cfg{3, 2, Rational(2)};
  // L2 already at 3/4 > cap 1/2: skipped for free, L3 dug next.
  EXPECT_EQ(is_dig({0, Rational(1, 2)}, P({Rational(1, 2), Rational(3, 4), 0}), {1, 2}, cfg, H("(1/2,0,1/2)")),
            DigResult::win);
  // L1 not in the order: never searched again.
  EXPECT_EQ(is_dig({0, Rational(1, 4)}, P({Rational(1, 4), 0, 0}), {1, 2}, cfg, H("({1/4,1/2},0,0)")),
            DigResult::lose);
}

TEST(IntelligentSearch, LemmaTwoCaseC) {
  // Find y in L1, dig L1 to 1, then L2 to 1 - y.
  const GameConfig cfg{4, 2, Rational(11, 6)};
  const Rational y(1, 4);
  EXPECT_EQ(is_dig({0, y}, P({y, 0, 0, 0}), {0, 1, 2, 3}, cfg, H("(1/4,3/4,0,0)")), DigResult::win);
}

TEST(Stage1, Interpolation) {
  SearcherScript s;
  s.stage1 = {P({Rational(1, 2), 0, 0, 0}), P({Rational(1, 2), Rational(1, 2), 0, 0}), P({1, Rational(1, 2), 0, 0})};
  EXPECT_EQ(stage1_profile_at(s, Rational(3, 4), 4).str(), "(1/2,1/4,0,0)");
  EXPECT_EQ(stage1_profile_at(s, Rational(3, 2), 4).str(), "(1,1/2,0,0)");
  EXPECT_EQ(*stage1_find_time(s, 1, Rational(1, 3)), Rational(5, 6));
  EXPECT_EQ(*stage1_find_time(s, 0, Rational(3, 4)), Rational(5, 4));
  EXPECT_FALSE(stage1_find_time(s, 2, Rational(1, 3)));

  SearcherScript joint;
  joint.stage1 = {P({Rational(2, 5), Rational(2, 5), 0, 0}), P({Rational(4, 5), Rational(6, 5) - Rational(2, 5), 0, 0})};
  EXPECT_EQ(stage1_profile_at(joint, Rational(6, 5), 4).str(), "(3/5,3/5,0,0)");
}

TEST(Script, Validation) {
  const GameConfig cfg{4, 2, Rational(11, 6)};
  SearcherScript back;
  back.stage1 = {P({Rational(1, 2), 0, 0, 0}), P({Rational(1, 4), 0, 0, 0})};
  EXPECT_THROW(back.validate(cfg), std::invalid_argument);
  SearcherScript over;
  over.stage1 = {P({1, 1, 0, 0})};
  EXPECT_THROW(over.validate(cfg), std::invalid_argument);
  SearcherScript unnormalized;
  unnormalized.stage1 = {P({1, 0, 0, 0})};
  unnormalized.stage2 = {{0, {{{0, 1, 2, 3}, Rational(1, 2)}}}};
  EXPECT_THROW(unnormalized.validate(cfg), std::invalid_argument);
  for (int id = 2; id <= 5; ++id) {
    for (const auto& ws : lemma_script(id)) EXPECT_NO_THROW(ws.script.validate({4, 2, lemma_spec(id).h_lo}));
  }
}

TEST(Script, PrettyPrint) {
  const auto mix = lemma_script(3);
  const std::string text = mix[0].script.str();
  EXPECT_NE(text.find("(3/5,0,0,0),(3/5,2/5,0,0)"), std::string::npos) << text;
  EXPECT_NE(text.find("IS(1234) w.p. 4/5 | IS(134) w.p. 1/5"), std::string::npos) << text;
  EXPECT_NE(mixture_str(lemma_script(4)).find("with probability 3/4"), std::string::npos);
}

TEST(Script, LemmaTwoCases) {
  const auto& spec = lemma_spec(2);
  const GameConfig cfg{4, 2, spec.h_lo};
  const auto mix = lemma_script(2);
  for (const auto& hp : family_E(Rational(1), cfg)) EXPECT_EQ(script_win_prob(mix, hp, cfg), Rational(1, 4));
  for (const auto x : {Rational(5, 6), Rational(9, 10), Rational(11, 12)}) {
    for (const auto& hp : family_D(x, cfg)) EXPECT_GE(script_win_prob(mix, hp, cfg), Rational(1, 4));
  }
  EXPECT_GE(script_win_prob(mix, H("(1/2,1/3,0,0)"), cfg), Rational(1, 3));
  EXPECT_GE(script_win_prob(mix, H("(1/4,1/5,0,0)"), cfg), Rational(1, 3));
}

TEST(Script, WinProbabilityGrowsWithBudget) {
  for (int id = 2; id <= 5; ++id) {
    const auto& spec = lemma_spec(id);
    const auto mix = lemma_script(id);
    const GameConfig lo{4, 2, spec.h_lo};
    const GameConfig hi{4, 2, spec.h_hi - Rational(1, 1000)};
    for (const char* text : {"(1/2,1/2,0,0)", "(0,1/3,0,2/3)", "({1/5,1},0,0,0)", "(1/4,0,1/6,0)"}) {
      EXPECT_LE(script_win_prob(mix, H(text), lo), script_win_prob(mix, H(text), hi)) << id << " " << text;
    }
  }
}

TEST(Script, RelabelAveragesFixedOrderings) {
  const auto& spec = lemma_spec(4);
  const GameConfig cfg{4, 2, spec.h_lo};
  const auto mix = lemma_script(4);
  const HiderPure hp = H("(4/5,1/5,0,0)");
  Rational total;
  for (const auto& o : orbit(hp)) total += script_win_prob_fixed(mix, o, cfg);
  EXPECT_EQ(script_win_prob(mix, hp, cfg), total / Rational(12));
}

TEST(Script, CaseTableExamples) {
  const GameConfig cfg{4, 2, Rational(7, 4)};
  const auto mix = lemma_script(4);
  EXPECT_EQ(script_win_prob_fixed(mix, H("(4/5,1/5,0,0)"), cfg), Rational(1));
  EXPECT_EQ(script_win_prob_fixed(mix, H("(1/5,4/5,0,0)"), cfg), Rational(1, 4) * Rational(2, 5));
  EXPECT_EQ(script_win_prob_fixed(mix, H("(4/5,0,1/5,0)"), cfg), Rational(3, 4) + Rational(1, 4) * Rational(2, 5));
  EXPECT_EQ(script_win_prob_fixed(mix, H("(4/5,0,0,1/5)"), cfg), Rational(3, 4));
}

TEST(LemmaData, Supports) {
  EXPECT_EQ(lemma_hider(2).support.size(), 4u);
  EXPECT_EQ(lemma_hider(3).support.size(), 20u);
  EXPECT_EQ(lemma_hider(4).support.size(), 40u);
  EXPECT_EQ(lemma_hider(5).support.size(), 30u);
  for (int id = 2; id <= 5; ++id) {
    const auto mix = lemma_hider(id);
    EXPECT_NO_THROW(mix.validate({4, 2, lemma_spec(id).h_lo}));
    EXPECT_TRUE(mix.is_symmetric());
    for (const auto& e : mix.support) EXPECT_EQ(e.prob, Rational(1, static_cast<long>(mix.support.size())));
  }
  EXPECT_THROW(lemma_spec(6), std::invalid_argument);
  EXPECT_THROW(lemma_script(1), std::invalid_argument);
}

TEST(LemmaData, LemmaFiveBestResponse) {
  const auto& spec = lemma_spec(5);
  EXPECT_EQ(best_response_value(lemma_hider(5), {4, 2, spec.h_lo}, Grid{spec.grid_m}).value, Rational(7, 30));
}

TEST(Scan, CandidatesAndSerialAgreement) {
  const GameConfig cfg{4, 2, Rational(11, 6)};
  const auto mix = lemma_script(2);
  const auto cands = scan_candidates(mix, cfg, Grid{12});
  std::set<std::string> seen;
  for (const auto& c : cands) {
    EXPECT_FALSE(validate_hider(c, cfg)) << c.str();
    seen.insert(c.str());
  }
  EXPECT_EQ(seen.size(), cands.size());
  EXPECT_TRUE(seen.count("(5/6,1/6,0,0)"));
  EXPECT_TRUE(seen.count("({1/2,1},0,0,0)"));
  const auto par = script_min_win_prob(mix, cfg, Grid{12});
  const auto ser = script_min_win_prob_serial(mix, cfg, Grid{12});
  EXPECT_EQ(par.min_value, ser.min_value);
  EXPECT_EQ(par.argmin, ser.argmin);
  EXPECT_EQ(par.min_value, Rational(1, 4));
}

TEST(CaseTables, ShapesAndClaims) {
  const auto t4 = lemma_case_tables(4);
  ASSERT_EQ(t4.size(), 2u);
  EXPECT_EQ(t4[0].cells.size(), 4u);
  EXPECT_EQ(t4[1].cells.size(), 3u);
  const auto t5 = lemma_case_tables(5);
  ASSERT_EQ(t5.size(), 3u);
  for (const auto* tables : {&t4, &t5}) {
    for (const auto& t : *tables) {
      for (const auto& c : t.cells) EXPECT_EQ(c.computed, c.claimed) << t.title << " " << c.label;
    }
  }
  EXPECT_THROW(lemma_case_tables(3), std::invalid_argument);
}

TEST(UniformAllocation, Counts) {
  EXPECT_EQ(uniform_allocation_count(4, 2), 10);
  EXPECT_EQ(proposition_value(4, 2), Rational(1, 10));
  EXPECT_EQ(proposition_value(2, 2), Rational(1, 3));
  EXPECT_EQ(uniform_allocation_count(3, 3), 10);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 4; ++k) {
      EXPECT_EQ(mpz_class(static_cast<unsigned long>(weak_compositions(n, k).size())), binomial(n + k - 1, k));
    }
  }
}

TEST(UniformAllocation, AreThePrefixStrategiesOfTheGrid) {
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const GameConfig cfg{n, k, Rational(1)};
      std::set<std::string> prefix;
      for (const auto& w : enumerate_grid_hiders(cfg, Grid{k})) {
        bool ok = true;
        for (const auto& s : w.strategy.sets) {
          for (std::size_t i = 0; i < s.size(); ++i) ok = ok && s[i] == Rational(static_cast<long>(i + 1), k);
        }
        if (ok) prefix.insert(w.strategy.str());
      }
      std::set<std::string> alloc;
      for (const auto& hp : uniform_allocations(n, k)) alloc.insert(hp.str());
      EXPECT_EQ(alloc, prefix) << n << " " << k;
    }
  }
}

TEST(UniformAllocation, DistributionPolicyWinsAgainstItsOwnAllocation) {
  const GameConfig cfg{3, 2, Rational(1)};
  const GridGame game = GridGame::make(cfg, Grid{2});
  for (const auto& comp : weak_compositions(3, 2)) {
    UniformDistributionPolicy policy(game, comp);
    int wins = 0;
    for (const auto& hp : uniform_allocations(3, 2)) wins += policy_wins(policy, to_grid(hp, Grid{2})) ? 1 : 0;
    EXPECT_EQ(wins, 1) << uniform_distribution_description(comp);
  }
  EXPECT_EQ(uniform_distribution_description({2, 0, 0}), "dig L1 until 2 objects are found");
}
