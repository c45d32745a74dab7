#include "cachegame/strategies.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace cachegame {

namespace {

void check_domain(int n, const Rational& h) {
  if (n < 2) throw std::invalid_argument("asymptotic evaluator needs n >= 2");
  if (h < Rational(1) || !(h < Rational(n))) throw std::invalid_argument("h outside [1, n)");
}

// Counts ordered position pairs; all quantities scaled by q*b where
// y = p/q and h = a/b, so every comparison is between integers.
template <class Int>
long count_wins(int n, const Int& p, const Int& q, const Int& a, const Int& b) {
  long wins = 0;
  const Int limit = a * q;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Int cost;
      if (i < j) {
        cost = Int(i - 1) * q + p + (q - p) * Int(j - i);
      } else {
        cost = Int(j - 1) * q + (q - p) + p * Int(i - j);
      }
      if (cost * b <= limit) ++wins;
    }
  }
  return wins;
}

template <class Int>
long count_lattice(int n, const Int& p, const Int& q, const Int& a, const Int& b) {
  long pts = 0;
  const Int limit = a * q;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && (Int(i) * p + Int(j) * (q - p)) * b <= limit) ++pts;
    }
  }
  return pts;
}

bool fits_small(int n, const Rational& h, const Rational& y) {
  const mpz_class bound = mpz_class(1) << 60;
  return mpz_class(4 * n) * y.den() * h.den() < bound && h.num() * y.den() < bound;
}

}  // namespace

Rational asymptotic_win_prob(int n, const Rational& h, const AsymptoticHider& hider) {
  check_domain(n, h);
  if (std::holds_alternative<SameLocation>(hider)) {
    // Both objects sit in the location at position i of the random order;
    // the Searcher reaches depth 1 there after i units of digging.
    long wins = 0;
    for (int i = 1; i <= n; ++i) {
      if (Rational(i) <= h) ++wins;
    }
    return Rational(wins, n);
  }
  const Rational& y = std::get<Split>(hider).y;
  if (y <= Rational(0) || y > Rational(1, 2)) throw std::invalid_argument("split depth must lie in (0, 1/2]");
  long wins;
  if (fits_small(n, h, y)) {
    wins = count_wins<long>(n, y.num().get_si(), y.den().get_si(), h.num().get_si(), h.den().get_si());
  } else {
    wins = count_wins<mpz_class>(n, y.num(), y.den(), h.num(), h.den());
  }
  return Rational(wins, static_cast<long>(n) * (n - 1));
}

long lattice_count(int n, const Rational& h, const Rational& y) {
  check_domain(n, h);
  if (fits_small(n, h, y)) {
    return count_lattice<long>(n, y.num().get_si(), y.den().get_si(), h.num().get_si(), h.den().get_si());
  }
  return count_lattice<mpz_class>(n, y.num(), y.den(), h.num(), h.den());
}

namespace {

struct SweepTask {
  int n;
  int h;
  int t;
};

std::vector<SweepTask> sweep_tasks(int n_lo, int n_hi, int y_den) {
  std::vector<SweepTask> tasks;
  for (int n = std::max(n_lo, 2); n <= n_hi; ++n) {
    for (int h = (n + 1) / 2; h <= n - 1; ++h) {
      if (h < 1) continue;
      for (int t = 1; 2 * t <= y_den; ++t) tasks.push_back({n, h, t});
    }
  }
  return tasks;
}

// Slack of the split bound; the same-location value is folded in as a
// violation flag.
std::pair<Rational, bool> sweep_point(const SweepTask& task, int y_den) {
  const Rational h(task.h);
  const Rational win = asymptotic_win_prob(task.n, h, Split{Rational(task.t, y_den)});
  const Rational slack = win - (h - Rational(2)) / Rational(task.n);
  const bool same_ok = asymptotic_win_prob(task.n, h, SameLocation{}) == Rational(task.h, task.n);
  return {slack, same_ok};
}

BoundSweep reduce_sweep(const std::vector<SweepTask>& tasks, const std::vector<Rational>& slack,
                        const std::vector<char>& same_ok, int y_den) {
  BoundSweep out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    ++out.checked;
    if (slack[i] < Rational(0) || !same_ok[i]) ++out.violations;
    if (i == 0 || slack[i] < out.min_slack) {
      out.min_slack = slack[i];
      out.worst = "n=" + std::to_string(tasks[i].n) + " h=" + std::to_string(tasks[i].h) +
                  " y=" + Rational(tasks[i].t, y_den).str();
    }
  }
  return out;
}

}  // namespace

BoundSweep theorem_bound_sweep_serial(int n_lo, int n_hi, int y_den) {
  const auto tasks = sweep_tasks(n_lo, n_hi, y_den);
  std::vector<Rational> slack(tasks.size());
  std::vector<char> same_ok(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto [s, ok] = sweep_point(tasks[i], y_den);
    slack[i] = s;
    same_ok[i] = ok;
  }
  return reduce_sweep(tasks, slack, same_ok, y_den);
}

BoundSweep theorem_bound_sweep(int n_lo, int n_hi, int y_den) {
  const auto tasks = sweep_tasks(n_lo, n_hi, y_den);
  std::vector<Rational> slack(tasks.size());
  std::vector<char> same_ok(tasks.size());
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    auto [s, ok] = sweep_point(tasks[i], y_den);
    slack[i] = s;
    same_ok[i] = ok;
  }
  return reduce_sweep(tasks, slack, same_ok, y_den);
}

// ---- uniform allocation / distribution ------------------------------------

std::vector<std::vector<int>> weak_compositions(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("weak compositions need n >= 1, k >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == n - 1) {
      cur[idx] = left;
      out.push_back(cur);
      return;
    }
    for (int c = left; c >= 0; --c) {
      cur[idx] = c;
      self(self, idx + 1, left - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

mpz_class uniform_allocation_count(int n, int k) {
  return binomial(static_cast<unsigned long>(n + k - 1), static_cast<unsigned long>(k));
}

Rational proposition_value(int n, int k) {
  return Rational(mpz_class(1), uniform_allocation_count(n, k));
}

std::vector<HiderPure> uniform_allocations(int n, int k) {
  std::vector<HiderPure> out;
  for (const auto& comp : weak_compositions(n, k)) {
    HiderPure hp;
    hp.sets.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int t = 1; t <= comp[i]; ++t) hp.sets[i].push_back(Rational(t, k));
    }
    out.push_back(std::move(hp));
  }
  return out;
}

std::string uniform_distribution_description(const std::vector<int>& composition) {
  std::string out;
  for (std::size_t i = 0; i < composition.size(); ++i) {
    if (composition[i] == 0) continue;
    if (!out.empty()) out += ", then ";
    out += "dig L" + std::to_string(i + 1) + " until " + std::to_string(composition[i]) +
           (composition[i] == 1 ? " object is" : " objects are") + " found";
  }
  return out;
}

DigAction UniformDistributionPolicy::next(const InfoState& s) const {
  if (s.found_count() >= game_.k || s.budget_left <= 0) return {};
  for (int i = 0; i < game_.n; ++i) {
    if (static_cast<int>(s.found[i].size()) < quota_[i] && s.dug[i] < game_.m) {
      return {i, std::min(game_.m, s.dug[i] + s.budget_left)};
    }
  }
  return {};
}

std::string UniformDistributionPolicy::describe() const {
  return "uniform-distribution(" + uniform_distribution_description(quota_) + ")";
}

}  // namespace cachegame
