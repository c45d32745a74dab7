#include "cachegame/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cachegame {

void GameConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (h < Rational(1) || !(h < Rational(n))) {
    throw std::invalid_argument("h = " + h.str() + " outside [1, n) for n = " + std::to_string(n));
  }
}

HiderPure::HiderPure(std::vector<DepthSet> s) : sets(std::move(s)) {
  for (auto& d : sets) std::sort(d.begin(), d.end());
}

int HiderPure::objects() const {
  int total = 0;
  for (const auto& d : sets) total += static_cast<int>(d.size());
  return total;
}

Rational HiderPure::max_depth_sum() const {
  Rational sum;
  for (const auto& d : sets) {
    if (!d.empty()) sum += d.back();
  }
  return sum;
}

std::string HiderPure::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ',';
    const auto& d = sets[i];
    if (d.empty()) {
      out += '0';
    } else if (d.size() == 1) {
      out += d[0].str();
    } else {
      out += '{';
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (j) out += ',';
        out += d[j].str();
      }
      out += '}';
    }
  }
  return out + ")";
}

HiderPure HiderPure::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("malformed strategy: '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail();
  s = s.substr(1, s.size() - 2);

  std::vector<DepthSet> sets;
  std::size_t i = 0;
  while (i <= s.size()) {
    DepthSet d;
    if (i < s.size() && s[i] == '{') {
      const auto close = s.find('}', i);
      if (close == std::string::npos) fail();
      std::string inner = s.substr(i + 1, close - i - 1);
      std::size_t p = 0;
      while (p <= inner.size()) {
        auto comma = inner.find(',', p);
        if (comma == std::string::npos) comma = inner.size();
        d.push_back(Rational::parse(inner.substr(p, comma - p)));
        p = comma + 1;
      }
      i = close + 1;
    } else {
      auto comma = s.find(',', i);
      if (comma == std::string::npos) comma = s.size();
      Rational v = Rational::parse(s.substr(i, comma - i));
      if (v != Rational(0)) d.push_back(v);
      i = comma;
    }
    sets.push_back(std::move(d));
    if (i >= s.size()) break;
    if (s[i] != ',') fail();
    ++i;
  }
  return HiderPure(std::move(sets));
}

bool location_less(const DepthSet& a, const DepthSet& b) {
  if (a.empty() || b.empty()) return !a.empty() && b.empty();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool hider_less(const HiderPure& a, const HiderPure& b) {
  return std::lexicographical_compare(a.sets.begin(), a.sets.end(), b.sets.begin(), b.sets.end(),
                                      location_less);
}

std::optional<std::string> validate_hider(const HiderPure& s, const GameConfig& cfg,
                                          bool allow_zero_depth) {
  if (s.locations() != cfg.n) {
    return "strategy has " + std::to_string(s.locations()) + " locations, expected " +
           std::to_string(cfg.n);
  }
  if (s.objects() != cfg.k) {
    return "strategy hides " + std::to_string(s.objects()) + " objects, expected " +
           std::to_string(cfg.k);
  }
  for (const auto& d : s.sets) {
    for (const auto& x : d) {
      if (x < Rational(0) || (!allow_zero_depth && x == Rational(0)) || x > Rational(1)) {
        return "depth " + x.str() + " outside " + (allow_zero_depth ? "[0,1]" : "(0,1]");
      }
    }
    if (!std::is_sorted(d.begin(), d.end())) return "depth multiset not sorted ascending";
  }
  const Rational sum = s.max_depth_sum();
  if (sum > Rational(1)) return "sum of deepest burial depths " + sum.str() + " exceeds 1";
  return std::nullopt;
}

CanonicalHider canonicalize(const HiderPure& s) {
  CanonicalHider out{s, 1};
  std::stable_sort(out.canonical.sets.begin(), out.canonical.sets.end(), location_less);

  // n! / prod(multiplicity!) over runs of identical locations.
  mpz_class count = 1;
  const auto& sets = out.canonical.sets;
  for (std::size_t i = 1; i <= sets.size(); ++i) count *= static_cast<unsigned long>(i);
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sets.size(); ++i) {
    if (i < sets.size() && sets[i] == sets[i - 1]) {
      ++run;
    } else {
      for (std::size_t j = 2; j <= run; ++j) count /= static_cast<unsigned long>(j);
      run = 1;
    }
  }
  out.orbit_size = count.get_ui();
  return out;
}

std::vector<HiderPure> orbit(const HiderPure& s) {
  HiderPure cur = canonicalize(s).canonical;
  std::vector<HiderPure> out;
  do {
    out.push_back(cur);
  } while (std::next_permutation(cur.sets.begin(), cur.sets.end(), location_less));
  return out;
}

HiderPure relabel(const HiderPure& s, const std::vector<int>& perm) {
  HiderPure out;
  out.sets.resize(s.sets.size());
  for (std::size_t i = 0; i < s.sets.size(); ++i) out.sets[perm[i]] = s.sets[i];
  return out;
}

HiderMixed HiderMixed::uniform(const std::vector<HiderPure>& strategies) {
  if (strategies.empty()) throw std::invalid_argument("uniform mix over an empty set");
  HiderMixed mix;
  const Rational p(1, static_cast<long>(strategies.size()));
  std::set<HiderPure, HiderLess> seen;
  for (const auto& s : strategies) {
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate strategy " + s.str());
    mix.support.push_back({s, p});
  }
  return mix;
}

void HiderMixed::validate(const GameConfig& cfg) const {
  if (support.empty()) throw std::invalid_argument("empty Hider support");
  Rational total;
  std::set<HiderPure, HiderLess> seen;
  for (const auto& [s, p] : support) {
    if (p <= Rational(0)) throw std::invalid_argument("non-positive probability " + p.str());
    if (auto err = validate_hider(s, cfg)) throw std::invalid_argument(s.str() + ": " + *err);
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate support entry " + s.str());
    total += p;
  }
  if (total != Rational(1)) throw std::invalid_argument("probabilities sum to " + total.str());
}

bool HiderMixed::is_symmetric() const {
  std::map<HiderPure, Rational, HiderLess> prob;
  for (const auto& [s, p] : support) prob[s] += p;
  for (const auto& [s, p] : support) {
    for (const auto& t : orbit(s)) {
      auto it = prob.find(t);
      if (it == prob.end() || it->second != p) return false;
    }
  }
  return true;
}

Rational DigProfile::total() const {
  Rational sum;
  for (const auto& d : depths) sum += d;
  return sum;
}

std::string DigProfile::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (i) out += ',';
    out += depths[i].str();
  }
  return out + ")";
}

}  // namespace cachegame
