#include "cachegame/bestresponse.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <type_traits>

namespace cachegame {

GridHider to_grid(const HiderPure& hp, const Grid& grid) {
  GridHider out(hp.sets.size());
  for (std::size_t i = 0; i < hp.sets.size(); ++i) {
    for (const auto& x : hp.sets[i]) {
      const Rational scaled = x * Rational(grid.m);
      if (!scaled.is_integer() || scaled < Rational(1) || scaled > Rational(grid.m)) {
        throw std::invalid_argument("depth " + x.str() + " of " + hp.str() + " is not on grid m=" +
                                    std::to_string(grid.m));
      }
      out[i].push_back(static_cast<int>(scaled.num().get_si()));
    }
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

HiderPure from_grid(const GridHider& gh, const Grid& grid) {
  HiderPure hp;
  hp.sets.resize(gh.size());
  for (std::size_t i = 0; i < gh.size(); ++i) {
    for (int t : gh[i]) hp.sets[i].push_back(Rational(t, grid.m));
  }
  return hp;
}

int effective_budget(const GameConfig& cfg, const Grid& grid) {
  const mpz_class steps = (cfg.h * Rational(grid.m)).floor();
  if (steps < 0) throw std::invalid_argument("negative budget");
  return static_cast<int>(steps.get_si());
}

GridGame GridGame::make(const GameConfig& cfg, const Grid& grid) {
  if (grid.m < 1 || grid.m > 250) throw std::invalid_argument("grid resolution must be in [1, 250]");
  return GridGame{cfg.n, cfg.k, grid.m, effective_budget(cfg, grid)};
}

InfoState InfoState::initial(const GridGame& g) {
  InfoState s;
  s.dug.assign(g.n, 0);
  s.found.assign(g.n, {});
  s.budget_left = g.budget;
  return s;
}

int InfoState::found_count() const {
  int c = 0;
  for (const auto& f : found) c += static_cast<int>(f.size());
  return c;
}

bool consistent(const GridHider& hp, const InfoState& s) {
  if (hp.size() != s.dug.size()) return false;
  for (std::size_t i = 0; i < hp.size(); ++i) {
    std::vector<int> above;
    for (int d : hp[i]) {
      if (d <= s.dug[i]) above.push_back(d);
    }
    std::vector<int> seen = s.found[i];
    std::sort(seen.begin(), seen.end());
    if (above != seen) return false;
  }
  return true;
}

std::pair<int, int> apply_action(InfoState& s, const DigAction& a, const GridHider& hp) {
  const auto& objects = hp[a.loc];
  for (int d = s.dug[a.loc] + 1; d <= a.target; ++d) {
    s.dug[a.loc] = d;
    --s.budget_left;
    const int count = static_cast<int>(std::count(objects.begin(), objects.end(), d));
    if (count > 0) {
      for (int c = 0; c < count; ++c) s.found[a.loc].push_back(d);
      return {d, count};
    }
  }
  return {0, 0};
}

namespace {

// Per-location encoding: dug depth, found count, found depths.
std::string encode_location(const InfoState& s, int i) {
  std::string out;
  out += static_cast<char>(s.dug[i]);
  out += static_cast<char>(s.found[i].size());
  for (int d : s.found[i]) out += static_cast<char>(d);
  return out;
}

// State key; when folding, locations are sorted and perm[slot] gives the
// actual location occupying each canonical slot.
std::string encode_state(const InfoState& s, bool fold, std::vector<int>* perm) {
  const int n = static_cast<int>(s.dug.size());
  std::vector<std::string> parts(n);
  for (int i = 0; i < n; ++i) parts[i] = encode_location(s, i);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (fold) {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return parts[a] < parts[b]; });
  }
  std::string key;
  for (int i : order) key += parts[i];
  if (perm) *perm = std::move(order);
  return key;
}

DigAction scan_action(const GridGame& g, const InfoState& s) {
  if (s.found_count() >= g.k || s.budget_left <= 0) return {};
  int total_max = 0;
  for (const auto& f : s.found) {
    if (!f.empty()) total_max += *std::max_element(f.begin(), f.end());
  }
  for (int i = 0; i < g.n; ++i) {
    const int own = s.found[i].empty() ? 0 : *std::max_element(s.found[i].begin(), s.found[i].end());
    const int cap = std::min(g.m, g.m - (total_max - own));
    if (cap > s.dug[i]) return {i, std::min(cap, s.dug[i] + s.budget_left)};
  }
  return {};
}

bool legal(const GridGame& g, const InfoState& s, const DigAction& a) {
  return a.loc >= 0 && a.loc < g.n && a.target > s.dug[a.loc] && a.target <= g.m &&
         a.target - s.dug[a.loc] <= s.budget_left;
}

template <class W>
class BestResponseDp {
 public:
  BestResponseDp(GridGame g, const std::vector<GridHider>& hiders, const std::vector<W>& weights,
                 bool fold, bool unit_steps)
      : g_(g), hiders_(hiders), weights_(weights), fold_(fold), unit_(unit_steps) {}

  W run() {
    InfoState s = InfoState::initial(g_);
    std::vector<int> all(hiders_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return solve(s, all);
  }

  std::unordered_map<std::string, TablePolicy::Entry> table() const {
    std::unordered_map<std::string, TablePolicy::Entry> out;
    out.reserve(memo_.size());
    for (const auto& [key, m] : memo_) out.emplace(key, m.entry);
    return out;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  struct Memo {
    W value;
    TablePolicy::Entry entry;
  };

  W solve(InfoState& s, const std::vector<int>& cons) {
    if (s.found_count() == g_.k) {
      W total = 0;
      for (int idx : cons) total += weights_[idx];
      return total;
    }
    if (s.budget_left == 0) return W(0);

    std::vector<int> perm;
    std::string key = encode_state(s, fold_, &perm);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    W best = 0;
    TablePolicy::Entry best_entry;
    std::vector<std::vector<int>> buckets(g_.k + 1);
    for (int i = 0; i < g_.n; ++i) {
      if (fold_) {
        bool duplicate = false;
        for (int j = 0; j < i && !duplicate; ++j) {
          duplicate = s.dug[j] == s.dug[i] && s.found[j] == s.found[i];
        }
        if (duplicate) continue;
      }
      int next = INT_MAX;
      for (int idx : cons) {
        for (int d : hiders_[idx][i]) {
          if (d > s.dug[i]) {
            next = std::min(next, d);
            break;
          }
        }
      }
      if (next == INT_MAX) continue;
      const int target = unit_ ? s.dug[i] + 1 : next;
      const int cost = target - s.dug[i];
      if (cost > s.budget_left) continue;

      for (auto& b : buckets) b.clear();
      for (int idx : cons) {
        const auto& objs = hiders_[idx][i];
        const int c = static_cast<int>(std::count(objs.begin(), objs.end(), target));
        buckets[c].push_back(idx);
      }

      const int saved_dug = s.dug[i];
      s.dug[i] = target;
      s.budget_left -= cost;
      W sum = 0;
      for (int c = 0; c <= g_.k; ++c) {
        if (buckets[c].empty()) continue;
        std::vector<int> child = std::move(buckets[c]);
        buckets[c].clear();
        for (int r = 0; r < c; ++r) s.found[i].push_back(target);
        sum += solve(s, child);
        for (int r = 0; r < c; ++r) s.found[i].pop_back();
      }
      s.dug[i] = saved_dug;
      s.budget_left += cost;

      if (sum > best) {
        best = sum;
        int slot = i;
        if (fold_) slot = static_cast<int>(std::find(perm.begin(), perm.end(), i) - perm.begin());
        best_entry = {static_cast<std::int16_t>(slot), static_cast<std::int16_t>(target)};
      }
    }
    memo_.emplace(std::move(key), Memo{best, best_entry});
    return best;
  }

  GridGame g_;
  const std::vector<GridHider>& hiders_;
  const std::vector<W>& weights_;
  bool fold_;
  bool unit_;
  std::unordered_map<std::string, Memo> memo_;
};

template <class W>
BestResponse run_dp(const GridGame& g, const std::vector<GridHider>& hiders,
                    const std::vector<W>& weights, const mpz_class& scale, bool fold, bool unit) {
  BestResponseDp<W> dp(g, hiders, weights, fold, unit);
  const W best = dp.run();
  BestResponse out;
  if constexpr (std::is_same_v<W, mpz_class>) {
    out.value = Rational(best, scale);
  } else {
    out.value = Rational(mpz_class(static_cast<long>(best)), scale);
  }
  out.states = dp.states();
  out.folded = fold;
  out.policy = std::make_shared<TablePolicy>(g, fold, dp.table());
  return out;
}

}  // namespace

DigAction ScanPolicy::next(const InfoState& s) const { return scan_action(game_, s); }

DigAction TablePolicy::next(const InfoState& s) const {
  if (s.found_count() >= game_.k || s.budget_left <= 0) return {};
  std::vector<int> perm;
  const std::string key = encode_state(s, folded_, &perm);
  if (auto it = table_.find(key); it != table_.end()) {
    if (it->second.pos < 0) return {};
    DigAction a{folded_ ? perm[it->second.pos] : it->second.pos, it->second.target};
    if (legal(game_, s, a)) return a;
  }
  return scan_action(game_, s);
}

std::string TablePolicy::describe() const {
  return "table(" + std::to_string(table_.size()) + " states" + (folded_ ? ", folded)" : ")");
}

bool policy_wins(const Policy& policy, const GridHider& hp) {
  const GridGame& g = policy.game();
  InfoState s = InfoState::initial(g);
  while (true) {
    if (s.found_count() == g.k) return true;
    const DigAction a = policy.next(s);
    if (a.is_stop()) return false;
    if (!legal(g, s, a)) throw std::logic_error("policy " + policy.describe() + " chose an illegal action");
    apply_action(s, a, hp);
  }
}

BestResponse best_response_value(const HiderMixed& mu, const GameConfig& cfg, const Grid& grid,
                                 const BestResponseOptions& opts) {
  if (mu.support.empty()) throw std::invalid_argument("empty Hider support");
  mu.validate(cfg);
  const GridGame g = GridGame::make(cfg, grid);

  std::vector<GridHider> hiders;
  mpz_class scale = 1;
  for (const auto& e : mu.support) {
    hiders.push_back(to_grid(e.strategy, grid));
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.prob.den().get_mpz_t());
  }
  const bool fold = opts.fold_symmetry && mu.is_symmetric();

  std::vector<mpz_class> big;
  for (const auto& e : mu.support) big.push_back(e.prob.num() * (scale / e.prob.den()));

  if (scale < (mpz_class(1) << 62)) {
    std::vector<long> small;
    for (const auto& w : big) small.push_back(w.get_si());
    return run_dp<long>(g, hiders, small, scale, fold, opts.unit_steps);
  }
  return run_dp<mpz_class>(g, hiders, big, scale, fold, opts.unit_steps);
}

PolicyNode extract_policy_tree(const Policy& policy, const std::vector<GridHider>& hiders) {
  const GridGame& g = policy.game();
  auto build = [&](auto&& self, const InfoState& s, const std::vector<const GridHider*>& group) -> PolicyNode {
    PolicyNode node;
    node.state = s;
    if (s.found_count() == g.k) {
      node.won = true;
      return node;
    }
    node.action = policy.next(s);
    if (node.action.is_stop() || group.empty()) return node;
    std::vector<std::pair<std::pair<int, int>, std::vector<const GridHider*>>> outcomes;
    std::vector<InfoState> next_states;
    for (const GridHider* hp : group) {
      InfoState t = s;
      const auto obs = apply_action(t, node.action, *hp);
      auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const auto& o) { return o.first == obs; });
      if (it == outcomes.end()) {
        outcomes.push_back({obs, {hp}});
        next_states.push_back(t);
      } else {
        it->second.push_back(hp);
      }
    }
    std::vector<std::size_t> order(outcomes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return outcomes[a].first < outcomes[b].first; });
    for (std::size_t i : order) {
      node.children.emplace_back(outcomes[i].first, self(self, next_states[i], outcomes[i].second));
    }
    return node;
  };
  std::vector<const GridHider*> all;
  for (const auto& hp : hiders) all.push_back(&hp);
  return build(build, InfoState::initial(g), all);
}

nlohmann::json policy_tree_json(const PolicyNode& node, const Grid& grid) {
  auto depth = [&](int t) { return Rational(t, grid.m).str(); };
  nlohmann::json j;
  j["dug"] = nlohmann::json::array();
  for (int d : node.state.dug) j["dug"].push_back(depth(d));
  j["found"] = nlohmann::json::array();
  for (const auto& f : node.state.found) {
    nlohmann::json loc = nlohmann::json::array();
    for (int d : f) loc.push_back(depth(d));
    j["found"].push_back(loc);
  }
  if (node.won) {
    j["won"] = true;
    return j;
  }
  if (node.action.is_stop()) {
    j["action"] = "stop";
    return j;
  }
  j["action"] = {{"location", node.action.loc + 1}, {"to", depth(node.action.target)}};
  j["children"] = nlohmann::json::array();
  for (const auto& [obs, child] : node.children) {
    nlohmann::json c;
    if (obs.first == 0) {
      c["revealed"] = nullptr;
    } else {
      c["revealed"] = {{"depth", depth(obs.first)}, {"count", obs.second}};
    }
    c["node"] = policy_tree_json(child, grid);
    j["children"].push_back(std::move(c));
  }
  return j;
}

}  // namespace cachegame
