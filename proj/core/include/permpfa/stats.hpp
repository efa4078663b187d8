#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permpfa/automaton.hpp"
#include "permpfa/numeric.hpp"
#include "permpfa/permutation.hpp"
#include "permpfa/rng.hpp"
#include "permpfa/romgen.hpp"
#include "permpfa/sampler.hpp"

namespace permpfa {

struct DistributionReport {
  enum class Mode { kExact, kEmpirical };

  Mode mode = Mode::kExact;
  std::size_t degree = 0;
  /// Distinct permutations observed (exact: reachable with positive mass).
  std::size_t group_size = 0;

  // Exact mode.
  std::map<Permutation, Rational> probabilities;
  Rational total_mass;
  /// max |p - 1/group_size|
  Rational max_deviation;

  // Empirical mode.
  std::map<Permutation, std::uint64_t> counts;
  std::uint64_t trials = 0;
  /// max |count/trials - 1/n!|
  double max_deviation_empirical = 0;
};

/// Enumerates every valid path of the Dpfa with its exact probability
/// (product of edge probabilities times the halting probability), evaluates
/// each path's word by composing the symbols' permutations left to right, and
/// groups the mass by permutation. Alphabet labels must parse as
/// permutations of `degree`. Throws TooLarge if |L| > max_paths.
DistributionReport exact_distribution(const Dpfa& dpfa, std::size_t degree,
                                      std::size_t max_paths = 10'000'000);

/// Exact probability of every accepted word (no grouping). Throws TooLarge.
std::vector<std::pair<SymbolWord, Rational>> exact_word_probabilities(
    const Dpfa& dpfa, std::size_t max_paths = 10'000'000);

/// Exact output distribution of simulate_datapath. Every draw r in [1, n!]
/// is pushed through select_column for every row, and the resulting column
/// frequencies drive an exhaustive walk. Throws TooLarge when n! exceeds
/// max_draws.
DistributionReport exact_datapath_distribution(
    const RomTable& rom, std::uint64_t max_draws = 1'000'000);

struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1;
};

/// Pearson's statistic against the given expected counts, with cells - 1
/// degrees of freedom. Throws UnderpoweredTest if any expected count is < 5.
ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected);

/// Same, with the uniform expectation total/cells in every cell.
ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> observed);

/// Lehmer rank of p in [0, n!), lexicographic over one-line forms. n <= 20.
std::uint64_t permutation_rank(const Permutation& p);

enum class Engine { kDpfa, kDatapath, kFisherYatesDesc, kFisherYatesAsc };

std::string engine_name(Engine engine);  // dpfa, datapath, fy-desc, fy-asc
Engine parse_engine(std::string_view name);

/// A ready-to-run shuffler for one engine and degree.
class ShuffleEngine {
 public:
  ShuffleEngine(Engine engine, std::size_t n);

  Engine kind() const { return kind_; }
  std::size_t degree() const { return degree_; }

  SwapTrace shuffle(std::span<Index> items, RandomSource& rng) const;

  /// Shuffles the identity array.
  std::pair<Permutation, SwapTrace> sample(RandomSource& rng) const;

 private:
  Engine kind_;
  std::size_t degree_;
  std::optional<DpfaSampler> sampler_;
  std::optional<RomTable> rom_;
};

/// Counts of every permutation of S_n over `trials` runs. n <= 10.
DistributionReport empirical_distribution(Engine engine, std::size_t n,
                                          std::uint64_t trials,
                                          std::uint64_t seed);

/// Empirical counts indexed by permutation_rank, zeros included.
std::vector<std::uint64_t> counts_by_rank(const DistributionReport& report);

/// table[position][value] counts over `trials` runs.
std::vector<std::vector<std::uint64_t>> position_counts(Engine engine,
                                                        std::size_t n,
                                                        std::uint64_t trials,
                                                        std::uint64_t seed);

/// One chi-square test per array position (each slot uniform over n values).
std::vector<ChiSquareResult> positional_uniformity(
    const std::vector<std::vector<std::uint64_t>>& table);

/// (H_n - 1)/(n - 1) * 100, exact. n >= 2.
Rational rounds_decrease_exact(unsigned n);
/// (H_n - 1)/(n - H_n) * 100, exact. n >= 2.
Rational speedup_exact(unsigned n);

double rounds_decrease_pct(unsigned n);
double speedup_pct(unsigned n);

enum class Metric { kRoundsDecrease, kSpeedup };

/// Largest N <= n_max with metric(m) >= threshold for every 2 <= m <= N, or
/// 1 if metric(2) already falls short.
unsigned threshold_boundary(Metric metric, const Rational& threshold,
                            unsigned n_max);

struct RoundSummary {
  std::uint64_t trials = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  std::size_t min_rounds = 0;
  std::size_t max_rounds = 0;

  double standard_error() const;
};

RoundSummary run_rounds(Engine engine, std::size_t n, std::uint64_t trials,
                        std::uint64_t seed);

struct BenchReport {
  unsigned n = 0;
  std::string engine;
  std::uint64_t trials = 0;
  double mean_rounds = 0;
  double expected_rounds = 0;
  double rounds_decrease_pct = 0;
  double speedup_pct = 0;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Exact expected rounds: n - H_n for automaton engines, n - 1 otherwise.
Rational expected_rounds(Engine engine, unsigned n);

/// Runs `trials` seeded shuffles and reports the mean round count next to
/// the closed forms. The percentages are 0 for n < 2.
BenchReport swap_count_bench(Engine engine, unsigned n, std::uint64_t trials,
                             std::uint64_t seed);

enum class ReportFormat { kJson, kCsv };

/// CSV header: n,engine,trials,mean_rounds,expected,decrease_pct,speedup_pct
/// Reals are written with 17 significant digits so they parse back exactly.
std::string emit_report(std::span<const BenchReport> reports,
                        ReportFormat format);
std::vector<BenchReport> parse_bench_csv(std::string_view text);

/// JSON: {"mode","degree","group_size","total_mass","max_deviation",
/// "entries":[{"perm":[...],"probability":"p/q"}]} for exact mode, and
/// "trials" plus per-entry "count" for empirical mode. CSV: a
/// "perm,probability" (or "perm,count") header, then one row per
/// permutation with the perm written as space-separated images.
std::string emit_report(const DistributionReport& report, ReportFormat format);

}  // namespace permpfa
