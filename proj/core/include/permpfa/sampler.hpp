#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permpfa/automaton.hpp"
#include "permpfa/errors.hpp"
#include "permpfa/permutation.hpp"
#include "permpfa/rng.hpp"

namespace permpfa {

/// One round's exchange of array positions. first == second is a no-op round
/// (Fisher-Yates only).
struct Swap {
  Index first = 0;
  Index second = 0;

  friend bool operator==(const Swap&, const Swap&) = default;
};

struct SwapTrace {
  std::vector<Swap> swaps;
  std::size_t rounds = 0;
  /// Set by automaton walks; empty for Fisher-Yates.
  std::optional<StateId> halted_in_state;

  friend bool operator==(const SwapTrace&, const SwapTrace&) = default;
};

/// Replays the swaps on `items`, in order.
template <class T>
void apply_swaps(std::span<T> items, const SwapTrace& trace) {
  for (const auto& s : trace.swaps) {
    if (s.first >= items.size() || s.second >= items.size()) {
      throw IndexOutOfRange("swap index beyond array length");
    }
    using std::swap;
    swap(items[s.first], items[s.second]);
  }
}

/// The identity array [0..n-1] after replaying the trace.
Permutation trace_permutation(const SwapTrace& trace, std::size_t degree);

/// Samples by walking a Dpfa whose alphabet labels are transpositions, e.g.
/// the M_n automaton. Each round draws r uniform on [1, pi_current]; the
/// outgoing edges own consecutive regions of width pi_target in symbol order
/// and the halting region (width 1 for a final state) comes last.
class DpfaSampler {
 public:
  /// Throws InvalidArgument if a label is not a transposition of `degree`.
  DpfaSampler(Dpfa dpfa, std::size_t degree);

  /// Sampler over the M_n automaton.
  static DpfaSampler symmetric_group(std::size_t n);

  std::size_t degree() const { return degree_; }
  const Dpfa& dpfa() const { return dpfa_; }

  SwapTrace sample_trace(RandomSource& rng) const;

  std::pair<Permutation, SwapTrace> sample_permutation(RandomSource& rng) const;

  /// Throws InvalidArgument if items.size() != degree().
  template <class T>
  SwapTrace shuffle_in_place(std::span<T> items, RandomSource& rng) const {
    if (items.size() != degree_) {
      throw InvalidArgument("shuffle_in_place: array length " +
                            std::to_string(items.size()) +
                            " does not match degree " +
                            std::to_string(degree_));
    }
    SwapTrace trace = sample_trace(rng);
    apply_swaps(items, trace);
    return trace;
  }

 private:
  Dpfa dpfa_;
  std::size_t degree_;
  std::vector<Transposition> actions_;
  // Machine-word copies of pi and the cumulative thresholds, present when
  // pi of the initial state fits in 64 bits.
  bool narrow_ = false;
  std::vector<std::uint64_t> narrow_pi_;
  std::vector<std::uint64_t> narrow_cumulative_;
};

inline std::pair<Permutation, SwapTrace> sample_permutation(
    const DpfaSampler& sampler, RandomSource& rng) {
  return sampler.sample_permutation(rng);
}

/// For i from n-1 down to 1: j uniform on {0..i}, swap A[i] and A[j]. Every
/// round is recorded, including j == i.
template <class T>
SwapTrace fisher_yates_desc(std::span<T> items, RandomSource& rng) {
  SwapTrace trace;
  for (std::size_t i = items.size(); i-- > 1;) {
    const auto j = static_cast<Index>(rng.uniform(std::uint64_t{i} + 1) - 1);
    using std::swap;
    swap(items[i], items[j]);
    trace.swaps.push_back({j, static_cast<Index>(i)});
  }
  trace.rounds = trace.swaps.size();
  return trace;
}

/// For i from 0 to n-2: j uniform on {i..n-1}, swap A[i] and A[j].
template <class T>
SwapTrace fisher_yates_asc(std::span<T> items, RandomSource& rng) {
  SwapTrace trace;
  const std::size_t n = items.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto j =
        static_cast<Index>(i + rng.uniform(std::uint64_t{n - i}) - 1);
    using std::swap;
    swap(items[i], items[j]);
    trace.swaps.push_back({static_cast<Index>(i), j});
  }
  trace.rounds = trace.swaps.size();
  return trace;
}

/// n - H_n: the mean canonical word length over S_n.
Rational expected_swaps(unsigned n);

/// {"perm":[...],"swaps":[[i,j],...],"rounds":k}
std::string trace_json_line(const Permutation& perm, const SwapTrace& trace);

}  // namespace permpfa
