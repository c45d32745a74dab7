#include "cachegame/strategies.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace cachegame {

namespace {

std::string is_name(const IsSequence& order) {
  std::string s = "IS(";
  for (int loc : order) s += std::to_string(loc + 1);
  return s + ")";
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct Object {
  int loc;
  Rational depth;
};

std::vector<Object> objects_of(const HiderPure& hp) {
  std::vector<Object> out;
  for (int i = 0; i < hp.locations(); ++i) {
    for (const auto& d : hp.sets[i]) out.push_back({i, d});
  }
  return out;
}

}  // namespace

void SearcherScript::validate(const GameConfig& cfg) const {
  DigProfile prev{std::vector<Rational>(cfg.n)};
  for (const auto& wp : stage1) {
    if (static_cast<int>(wp.depths.size()) != cfg.n) throw std::invalid_argument("waypoint has wrong length");
    for (int i = 0; i < cfg.n; ++i) {
      if (wp.depths[i] < prev.depths[i]) throw std::invalid_argument("waypoint " + wp.str() + " retreats");
      if (wp.depths[i] > Rational(1)) throw std::invalid_argument("waypoint " + wp.str() + " digs below depth 1");
    }
    prev = wp;
  }
  if (prev.total() > cfg.h) {
    throw std::invalid_argument("stage 1 digs " + prev.total().str() + " > h = " + cfg.h.str());
  }
  for (const auto& [loc, rules] : stage2) {
    if (loc < 0 || loc >= cfg.n) throw std::invalid_argument("stage-2 trigger out of range");
    Rational total;
    for (const auto& r : rules) {
      if (r.prob <= Rational(0)) throw std::invalid_argument("non-positive stage-2 probability");
      for (int j : r.order) {
        if (j < 0 || j >= cfg.n) throw std::invalid_argument("IS sequence location out of range");
      }
      total += r.prob;
    }
    if (total != Rational(1)) throw std::invalid_argument("stage-2 probabilities sum to " + total.str());
  }
}

std::string SearcherScript::str() const {
  std::string out = "Stage 1: ";
  for (std::size_t i = 0; i < stage1.size(); ++i) {
    if (i) out += ',';
    out += stage1[i].str();
  }
  out += "\nStage 2: ";
  bool first = true;
  for (const auto& [loc, rules] : stage2) {
    if (!first) out += " ; ";
    first = false;
    out += "L" + std::to_string(loc + 1) + ": ";
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (i) out += " | ";
      out += is_name(rules[i].order);
      if (rules.size() > 1 || rules[i].prob != Rational(1)) out += " w.p. " + rules[i].prob.str();
    }
  }
  return out;
}

std::string mixture_str(const ScriptMixture& mix) {
  std::string out;
  for (const auto& [script, p] : mix) {
    out += "with probability " + p.str() + (script.relabel ? ", random labeling" : "") + ":\n" +
           script.str() + "\n";
  }
  return out;
}

DigResult is_dig(const Find& first, const DigProfile& profile_at_find, const IsSequence& sigma,
                 const GameConfig& cfg, const HiderPure& hp) {
  if (cfg.k != 2) throw std::invalid_argument("intelligent search is defined for k = 2");
  std::vector<Object> rest = objects_of(hp);
  auto it = std::find_if(rest.begin(), rest.end(),
                         [&](const Object& o) { return o.loc == first.loc && o.depth == first.depth; });
  if (it == rest.end()) throw std::invalid_argument("first find is not an object of " + hp.str());
  rest.erase(it);
  const Object other = rest.at(0);

  std::vector<Rational> depth = profile_at_find.depths;
  if (other.depth <= depth[other.loc]) throw std::invalid_argument("second object already uncovered");
  Rational used = profile_at_find.total();
  const Rational elsewhere_cap = Rational(1) - first.depth;
  for (int j : sigma) {
    const Rational cap = j == first.loc ? Rational(1) : elsewhere_cap;
    if (depth[j] >= cap) continue;
    if (j == other.loc && other.depth <= cap) {
      return used + (other.depth - depth[j]) <= cfg.h ? DigResult::win : DigResult::lose;
    }
    used += cap - depth[j];
    depth[j] = cap;
    if (used > cfg.h) return DigResult::lose;
  }
  return DigResult::lose;
}

std::optional<Rational> stage1_find_time(const SearcherScript& script, int loc, const Rational& depth) {
  Rational prev_depth;
  Rational prev_time;
  for (const auto& wp : script.stage1) {
    const Rational time = wp.total();
    if (wp.depths[loc] >= depth) {
      return prev_time + (depth - prev_depth) / (wp.depths[loc] - prev_depth) * (time - prev_time);
    }
    prev_depth = wp.depths[loc];
    prev_time = time;
  }
  return std::nullopt;
}

DigProfile stage1_profile_at(const SearcherScript& script, const Rational& t, int n) {
  DigProfile prev{std::vector<Rational>(n)};
  Rational prev_time;
  for (const auto& wp : script.stage1) {
    const Rational time = wp.total();
    if (t <= time && time > prev_time) {
      const Rational frac = (t - prev_time) / (time - prev_time);
      DigProfile out = prev;
      for (int i = 0; i < n; ++i) out.depths[i] += frac * (wp.depths[i] - prev.depths[i]);
      return out;
    }
    prev = wp;
    prev_time = time;
  }
  return prev;
}

Rational script_win_prob_fixed(const SearcherScript& script, const HiderPure& hp, const GameConfig& cfg) {
  if (cfg.k != 2) throw std::invalid_argument("scripts are defined for k = 2");
  const auto objs = objects_of(hp);
  std::vector<std::optional<Rational>> times;
  std::optional<Rational> first_time;
  for (const auto& o : objs) {
    times.push_back(stage1_find_time(script, o.loc, o.depth));
    if (times.back() && (!first_time || *times.back() < *first_time)) first_time = times.back();
  }
  if (!first_time) return Rational(0);

  std::vector<int> at_first;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (times[i] && *times[i] == *first_time) at_first.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(at_first.size()) == cfg.k) return Rational(1);

  const Object& trigger = objs[at_first[0]];
  auto rules = script.stage2.find(trigger.loc);
  if (rules == script.stage2.end()) return Rational(0);
  const DigProfile profile = stage1_profile_at(script, *first_time, cfg.n);
  Rational win;
  for (const auto& rule : rules->second) {
    if (is_dig({trigger.loc, trigger.depth}, profile, rule.order, cfg, hp) == DigResult::win) win += rule.prob;
  }
  return win;
}

Rational script_win_prob_fixed(const ScriptMixture& mix, const HiderPure& hp, const GameConfig& cfg) {
  Rational total;
  for (const auto& [script, p] : mix) total += p * script_win_prob_fixed(script, hp, cfg);
  return total;
}

Rational script_win_prob(const SearcherScript& script, const HiderPure& hp, const GameConfig& cfg) {
  if (auto err = validate_hider(hp, cfg)) throw std::invalid_argument(hp.str() + ": " + *err);
  if (!script.relabel) return script_win_prob_fixed(script, hp, cfg);
  const auto perms = all_permutations(cfg.n);
  Rational total;
  for (const auto& perm : perms) total += script_win_prob_fixed(script, relabel(hp, perm), cfg);
  return total / Rational(static_cast<long>(perms.size()));
}

Rational script_win_prob(const ScriptMixture& mix, const HiderPure& hp, const GameConfig& cfg) {
  Rational total;
  for (const auto& [script, p] : mix) total += p * script_win_prob(script, hp, cfg);
  return total;
}

std::vector<HiderPure> scan_candidates(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan) {
  if (cfg.k != 2) throw std::invalid_argument("script scans are defined for k = 2");
  std::set<Rational> base;
  for (int t = 1; t <= scan.m; ++t) base.insert(Rational(t, scan.m));
  for (const auto& [script, p] : mix) {
    for (const auto& wp : script.stage1) {
      for (const auto& d : wp.depths) {
        for (const Rational& b : {d, Rational(1) - d}) {
          if (b > Rational(0) && b <= Rational(1)) base.insert(b);
        }
      }
    }
  }
  std::set<Rational> depths = base;
  Rational prev;
  for (const auto& d : base) {
    depths.insert((prev + d) / Rational(2));
    prev = d;
  }
  const std::vector<Rational> ds(depths.begin(), depths.end());

  bool relabels = std::all_of(mix.begin(), mix.end(), [](const auto& w) { return w.script.relabel; });
  std::vector<std::pair<int, int>> placements;
  if (relabels) {
    placements.push_back({0, 1});
  } else {
    for (int i = 0; i < cfg.n; ++i) {
      for (int j = 0; j < cfg.n; ++j) {
        if (i != j) placements.push_back({i, j});
      }
    }
  }

  std::vector<HiderPure> out;
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a; b < ds.size(); ++b) {
      // Same location: depths ds[a] <= ds[b].
      for (int loc = 0; loc < (relabels ? 1 : cfg.n); ++loc) {
        HiderPure hp;
        hp.sets.resize(cfg.n);
        hp.sets[loc] = {ds[a], ds[b]};
        out.push_back(std::move(hp));
      }
      // Different locations: deeper object x = ds[b] first, y = ds[a].
      if (ds[a] + ds[b] > Rational(1)) continue;
      for (const auto& [lx, ly] : placements) {
        HiderPure hp;
        hp.sets.resize(cfg.n);
        hp.sets[lx] = {ds[b]};
        hp.sets[ly] = {ds[a]};
        out.push_back(std::move(hp));
      }
    }
  }
  return out;
}

namespace {

ScanResult reduce_scan(const std::vector<HiderPure>& cands, const std::vector<Rational>& values) {
  ScanResult out;
  out.candidates = cands.size();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (i == 0 || values[i] < out.min_value) {
      out.min_value = values[i];
      out.argmin = cands[i];
    }
  }
  return out;
}

}  // namespace

ScanResult script_min_win_prob_serial(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan) {
  for (const auto& w : mix) w.script.validate(cfg);
  const auto cands = scan_candidates(mix, cfg, scan);
  std::vector<Rational> values;
  values.reserve(cands.size());
  for (const auto& hp : cands) values.push_back(script_win_prob(mix, hp, cfg));
  return reduce_scan(cands, values);
}

ScanResult script_min_win_prob(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan) {
  for (const auto& w : mix) w.script.validate(cfg);
  const auto cands = scan_candidates(mix, cfg, scan);
  std::vector<Rational> values(cands.size());
  const long count = static_cast<long>(cands.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) values[i] = script_win_prob(mix, cands[i], cfg);
  return reduce_scan(cands, values);
}

// ---- lemma data -------------------------------------------------------------

namespace {

DigProfile P(std::initializer_list<Rational> d) { return DigProfile{std::vector<Rational>(d)}; }
Rational R(long a, long b = 1) { return Rational(a, b); }

const IsSequence kIs1234{0, 1, 2, 3};
const IsSequence kIs234{1, 2, 3};
const IsSequence kIs134{0, 2, 3};
const IsSequence kIs34{2, 3};

std::vector<HiderPure> concat(std::initializer_list<std::vector<HiderPure>> parts) {
  std::vector<HiderPure> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

const LemmaSpec& lemma_spec(int id) {
  static const std::vector<LemmaSpec> specs = {
      {2, R(11, 6), R(2), R(1, 4), 6},
      {3, R(11, 5), R(7, 3), R(9, 20), 15},
      {4, R(7, 4), R(9, 5), R(9, 40), 20},
      {5, R(9, 5), R(11, 6), R(7, 30), 30},
  };
  for (const auto& s : specs) {
    if (s.id == id) return s;
  }
  throw std::invalid_argument("unknown lemma " + std::to_string(id) + " (expected 2, 3, 4 or 5)");
}

HiderMixed lemma_hider(int id) {
  const LemmaSpec& spec = lemma_spec(id);
  const GameConfig cfg{4, 2, spec.h_lo};
  switch (id) {
    case 2:
      return HiderMixed::uniform(family_E(R(1), cfg));
    case 3:
      return HiderMixed::uniform(concat({family_D(R(1, 3), cfg), family_E(R(1, 3), cfg), family_E(R(2, 3), cfg)}));
    case 4:
      return HiderMixed::uniform(concat({family_D(R(1, 5), cfg), family_D(R(2, 5), cfg), family_E(R(1, 5), cfg),
                                         family_E(R(2, 5), cfg), family_E(R(3, 5), cfg), family_E(R(4, 5), cfg)}));
    default:
      return HiderMixed::uniform(concat({family_D(R(1, 6), cfg), family_D(R(1, 2), cfg), family_E(R(1, 6), cfg),
                                         family_E(R(1, 2), cfg), family_E(R(5, 6), cfg)}));
  }
}

ScriptMixture lemma_script(int id) {
  lemma_spec(id);
  switch (id) {
    case 2: {
      SearcherScript s;
      s.stage1 = {P({R(1, 2), 0, 0, 0}), P({R(1, 2), R(1, 2), 0, 0}), P({R(1), R(1, 2), 0, 0})};
      s.stage2 = {{0, {{kIs1234, 1}}}, {1, {{kIs134, 1}}}};
      return {{s, 1}};
    }
    case 3: {
      SearcherScript s;
      s.stage1 = {P({R(3, 5), 0, 0, 0}), P({R(3, 5), R(2, 5), 0, 0}), P({R(4, 5), R(3, 5), 0, 0}),
                  P({R(4, 5), R(4, 5), 0, 0}), P({R(1), R(4, 5), 0, 0}), P({R(1), R(1), 0, 0})};
      s.stage2 = {{0, {{kIs1234, 1}}}, {1, {{kIs1234, R(4, 5)}, {kIs134, R(1, 5)}}}};
      return {{s, 1}};
    }
    case 4: {
      SearcherScript a;
      a.stage1 = {P({R(3, 4), 0, 0, 0}), P({R(3, 4), R(1, 4), 0, 0}), P({R(1), R(1, 4), 0, 0}),
                  P({R(1), R(3, 4), 0, 0})};
      a.stage2 = {{0, {{kIs1234, 1}}}, {1, {{kIs134, 1}}}};
      SearcherScript b;
      b.stage1 = {P({R(3, 4), 0, 0, 0}), P({R(3, 4), R(3, 4), 0, 0}), P({R(1), R(3, 4), 0, 0})};
      b.stage2 = {{0, {{kIs1234, R(3, 5)}, {kIs234, R(2, 5)}}}, {1, {{kIs134, 1}}}};
      return {{a, R(3, 4)}, {b, R(1, 4)}};
    }
    default: {
      SearcherScript a;
      a.stage1 = {P({R(1), 0, 0, 0}), P({R(1), R(4, 5), 0, 0})};
      a.stage2 = {{0, {{kIs1234, 1}}}, {1, {{kIs34, 1}}}};
      SearcherScript b;
      b.stage1 = {P({R(3, 5), 0, 0, 0}), P({R(3, 5), R(3, 5), 0, 0}), P({R(1), R(3, 5), 0, 0}),
                  P({R(1), R(4, 5), 0, 0})};
      b.stage2 = {{0, {{kIs1234, R(4, 5)}, {kIs234, R(1, 5)}}}, {1, {{kIs134, 1}}}};
      return {{a, R(2, 3)}, {b, R(1, 3)}};
    }
  }
}

// ---- per-case tables --------------------------------------------------------

namespace {

// Location of x and y in a pattern such as "(x,0,y,0)".
std::pair<int, int> pattern_slots(const std::string& pattern) {
  int slot = 0;
  int xs = -1;
  int ys = -1;
  for (char c : pattern) {
    if (c == 'x') xs = slot;
    if (c == 'y') ys = slot;
    if (c == ',') ++slot;
  }
  return {xs, ys};
}

CaseCell evaluate_cell(const ScriptMixture& mix, const GameConfig& cfg, const std::vector<std::string>& patterns,
                       const std::function<bool(const Rational&, const Rational&)>& regime, const Rational& claimed) {
  CaseCell cell;
  for (std::size_t i = 0; i < patterns.size(); ++i) cell.label += (i ? " or " : "") + patterns[i];
  cell.claimed = claimed;
  bool any = false;
  const int m = 120;
  for (int xt = 1; xt <= m; ++xt) {
    for (int yt = 1; yt <= xt && xt + yt <= m; ++yt) {
      const Rational x(xt, m);
      const Rational y(yt, m);
      if (!regime(x, y)) continue;
      for (const auto& pat : patterns) {
        const auto [xs, ys] = pattern_slots(pat);
        HiderPure hp;
        hp.sets.resize(cfg.n);
        hp.sets[xs] = {x};
        hp.sets[ys] = {y};
        const Rational v = script_win_prob_fixed(mix, hp, cfg);
        if (!any || v < cell.computed) {
          cell.computed = v;
          cell.witness = hp;
          any = true;
        }
      }
    }
  }
  return cell;
}

}  // namespace

std::vector<CaseTable> lemma_case_tables(int id) {
  const LemmaSpec& spec = lemma_spec(id);
  const GameConfig cfg{4, 2, spec.h_lo};
  const ScriptMixture mix = lemma_script(id);
  using Regime = std::function<bool(const Rational&, const Rational&)>;
  std::vector<CaseTable> out;
  auto table = [&](std::string title, std::string regime_text, const Regime& regime,
                   const std::vector<std::pair<std::vector<std::string>, Rational>>& cells) {
    CaseTable t{std::move(title), std::move(regime_text), {}};
    for (const auto& [patterns, claimed] : cells) t.cells.push_back(evaluate_cell(mix, cfg, patterns, regime, claimed));
    out.push_back(std::move(t));
  };

  if (id == 4) {
    table("different locations, deeper object x >= 3/4", "x > 3/4",
          [](const Rational& x, const Rational&) { return x > R(3, 4); },
          {{{"(x,y,0,0)"}, R(1)},
           {{"(y,x,0,0)"}, R(1, 4) * R(2, 5)},
           {{"(x,0,y,0)"}, R(3, 4) + R(1, 4) * R(2, 5)},
           {{"(x,0,0,y)"}, R(3, 4)}});
    table("different locations, x, y <= 3/4", "x <= 3/4",
          [](const Rational& x, const Rational&) { return x <= R(3, 4); },
          {{{"(x,y,0,0)", "(y,x,0,0)"}, R(1)},
           {{"(x,0,y,0)", "(y,0,x,0)"}, R(1, 10)},
           {{"(0,x,y,0)", "(0,y,x,0)"}, R(1, 4)}});
  } else if (id == 5) {
    table("different locations, deeper object x >= 4/5", "x > 4/5",
          [](const Rational& x, const Rational&) { return x > R(4, 5); },
          {{{"(x,y,0,0)"}, R(1)},
           {{"(y,x,0,0)"}, R(1, 3) * R(1, 5)},
           {{"(x,0,y,0)"}, R(1)},
           {{"(x,0,0,y)"}, R(2, 3) + R(1, 3) * R(1, 5)}});
    table("different locations, x in [3/5, 4/5]", "3/5 <= x <= 4/5",
          [](const Rational& x, const Rational&) { return x >= R(3, 5) && x <= R(4, 5); },
          {{{"(x,y,0,0)"}, R(1)},
           {{"(y,x,0,0)"}, R(1)},
           {{"(x,0,y,0)"}, R(11, 15)},
           {{"(y,0,x,0)"}, R(1, 15)},
           {{"(0,y,x,0)"}, R(1, 3)}});
    table("different locations, x, y <= 3/5", "x <= 3/5",
          [](const Rational& x, const Rational&) { return x <= R(3, 5); },
          {{{"(x,y,0,0)", "(y,x,0,0)"}, R(1)},
           {{"(x,0,y,0)", "(y,0,x,0)"}, R(1, 15)},
           {{"(0,x,y,0)", "(0,y,x,0)"}, R(1, 3)}});
  } else {
    throw std::invalid_argument("per-case tables exist for lemmas 4 and 5 only");
  }
  return out;
}

}  // namespace cachegame
