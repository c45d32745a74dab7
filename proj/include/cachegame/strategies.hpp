#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cachegame/bestresponse.hpp"
#include "cachegame/core.hpp"
#include "cachegame/enumeration.hpp"

namespace cachegame {

/// Visiting order of locations (0-based) for an intelligent search.
using IsSequence = std::vector<int>;

struct IsRule {
  IsSequence order;
  Rational prob;
};

/// Two-stage Searcher strategy for k = 2. Stage 1 moves linearly (in total
/// dig time) between waypoints starting from the all-zero profile; on the
/// first find in location L, Stage 2 draws an intelligent search from
/// stage2[L].
struct SearcherScript {
  std::vector<DigProfile> stage1;
  std::map<int, std::vector<IsRule>> stage2;
  /// Averaged over every labeling of the locations.
  bool relabel = true;

  /// Throws std::invalid_argument if digging ever retreats, the final
  /// waypoint exceeds h, or a stage-2 distribution is not normalized.
  void validate(const GameConfig& cfg) const;

  /// Waypoints, then rules as "L1: IS(1234) | L2: IS(1234) w.p. 4/5, IS(134) w.p. 1/5".
  std::string str() const;
};

struct WeightedScript {
  SearcherScript script;
  Rational prob;
};

/// Distribution over scripts.
using ScriptMixture = std::vector<WeightedScript>;

std::string mixture_str(const ScriptMixture& mix);

enum class DigResult { win, lose };

struct Find {
  int loc = 0;
  Rational depth;
};

/// Stage 2 after exactly one object was found at `first`: dig each location
/// of sigma in turn to its cap (1 in the first-find location, 1 - d
/// elsewhere), skipping locations already dug that deep, until the second
/// object turns up or the budget h runs out.
DigResult is_dig(const Find& first, const DigProfile& profile_at_find, const IsSequence& sigma,
                 const GameConfig& cfg, const HiderPure& hp);

/// Moment the dig front first reaches `depth` in `loc`, if ever.
std::optional<Rational> stage1_find_time(const SearcherScript& script, int loc, const Rational& depth);
/// Interpolated Stage-1 profile at total dig time t.
DigProfile stage1_profile_at(const SearcherScript& script, const Rational& t, int n);

/// Win probability with hp given in the script's own location labels
/// (no relabeling), averaged over the stage-2 randomization.
Rational script_win_prob_fixed(const SearcherScript& script, const HiderPure& hp, const GameConfig& cfg);
Rational script_win_prob_fixed(const ScriptMixture& mix, const HiderPure& hp, const GameConfig& cfg);

/// Exact win probability, averaged over labelings when the script relabels.
Rational script_win_prob(const SearcherScript& script, const HiderPure& hp, const GameConfig& cfg);
Rational script_win_prob(const ScriptMixture& mix, const HiderPure& hp, const GameConfig& cfg);

/// Every k = 2 Hider strategy with depths drawn from the scan grid, the
/// script's breakpoints and midpoints between consecutive such depths.
std::vector<HiderPure> scan_candidates(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan);

struct ScanResult {
  Rational min_value;
  HiderPure argmin;
  std::size_t candidates = 0;
};

/// Minimum of script_win_prob over scan_candidates. OpenMP-parallel over
/// candidates; the _serial variant is the reference.
ScanResult script_min_win_prob(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan);
ScanResult script_min_win_prob_serial(const ScriptMixture& mix, const GameConfig& cfg, const Grid& scan);

/// Parameters of the four solved n = 4, k = 2 cases.
struct LemmaSpec {
  int id;
  Rational h_lo;   // interval [h_lo, h_hi)
  Rational h_hi;
  Rational value;
  int grid_m;      // grid carrying the Hider mix
};

/// Throws std::invalid_argument unless id is 2, 3, 4 or 5.
const LemmaSpec& lemma_spec(int id);
HiderMixed lemma_hider(int id);
ScriptMixture lemma_script(int id);

/// One cell of a per-case table: the minimum conditional win probability
/// over the listed orderings and over a regime of depths (x, y), y <= x.
struct CaseCell {
  std::string label;      // e.g. "(x,0,y,0)" or "(x,y,0,0) or (y,x,0,0)"
  Rational claimed;
  Rational computed;
  HiderPure witness;
};

struct CaseTable {
  std::string title;
  std::string regime;
  std::vector<CaseCell> cells;
};

/// The per-case win-probability tables for lemma 4 (two tables) and
/// lemma 5 (three tables), evaluated at the interval's left endpoint.
std::vector<CaseTable> lemma_case_tables(int id);

// ---- asymptotic evaluator -------------------------------------------------

struct SameLocation {};
/// Objects at depths y and 1 - y in distinct locations, 0 < y <= 1/2.
struct Split {
  Rational y;
};
using AsymptoticHider = std::variant<SameLocation, Split>;

/// Win probability of the Searcher who digs to depth 1 location by location
/// in a random order until the first find at depth d, then to depth 1 - d
/// in the locations that follow.
Rational asymptotic_win_prob(int n, const Rational& h, const AsymptoticHider& hider);

/// Ordered position pairs (i, j), i != j, with i*y + j*(1 - y) <= h.
long lattice_count(int n, const Rational& h, const Rational& y);

struct BoundSweep {
  long checked = 0;
  long violations = 0;
  /// Smallest win probability minus (h - 2)/n seen in the sweep.
  Rational min_slack;
  std::string worst;  // "n=.. h=.. y=.."
};

/// Checks asymptotic_win_prob(split y) >= (h - 2)/n and the same-location
/// value floor(h)/n for n in [n_lo, n_hi], integer h in [ceil(n/2), n-1],
/// y = t/y_den for t = 1..y_den/2. OpenMP-parallel; _serial is the reference.
BoundSweep theorem_bound_sweep(int n_lo, int n_hi, int y_den);
BoundSweep theorem_bound_sweep_serial(int n_lo, int n_hi, int y_den);

// ---- uniform allocation / distribution ------------------------------------

/// All ordered n-tuples of non-negative integers summing to k.
std::vector<std::vector<int>> weak_compositions(int n, int k);
/// Number of weak compositions of k into n parts, C(n+k-1, k).
mpz_class uniform_allocation_count(int n, int k);
/// 1 / C(n+k-1, k).
Rational proposition_value(int n, int k);
/// Per composition, k_i objects at depths 1/k, ..., k_i/k in location i.
std::vector<HiderPure> uniform_allocations(int n, int k);
std::string uniform_distribution_description(const std::vector<int>& composition);

/// Digs locations in order, each until its quota of objects is found.
class UniformDistributionPolicy : public Policy {
 public:
  UniformDistributionPolicy(GridGame g, std::vector<int> quota) : Policy(g), quota_(std::move(quota)) {}
  DigAction next(const InfoState& s) const override;
  std::string describe() const override;

 private:
  std::vector<int> quota_;
};

}  // namespace cachegame
