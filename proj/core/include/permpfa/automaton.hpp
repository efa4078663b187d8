#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permpfa/numeric.hpp"

namespace permpfa {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

struct Transition {
  StateId from = 0;
  SymbolId symbol = 0;
  StateId to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A deterministic acceptor with an implicit (elided) trap state. Symbols are
/// indices into an ordered alphabet of opaque, whitespace-free labels; the
/// alphabet order is the symbol order used for word comparison.
///
/// Transitions are kept sorted by (from, symbol), so outgoing(s) lists the
/// edges of s in symbol order.
class FiniteDfa {
 public:
  FiniteDfa() = default;

  /// Throws InvalidArgument on out-of-range ids, duplicate (from, symbol)
  /// pairs, or labels that are empty, repeated or contain whitespace.
  FiniteDfa(std::size_t state_count, StateId initial,
            std::vector<StateId> finals, std::vector<Transition> transitions,
            std::vector<std::string> alphabet);

  std::size_t state_count() const { return final_.size(); }
  StateId initial() const { return initial_; }
  bool is_final(StateId s) const { return final_[s]; }
  std::vector<StateId> finals() const;

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::span<const Transition> transitions() const { return transitions_; }
  std::span<const Transition> outgoing(StateId s) const;

  std::optional<StateId> step(StateId s, SymbolId symbol) const;

  /// Runs the word from the initial state; false if it falls into the trap or
  /// ends in a non-final state.
  bool accepts(std::span<const SymbolId> word) const;

  friend bool operator==(const FiniteDfa&, const FiniteDfa&) = default;

 private:
  StateId initial_ = 0;
  std::vector<bool> final_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> alphabet_;
};

/// The minimal DFA of S_n over the transposition alphabet: state q_{i+1} is
/// StateId i, every state is final, and (lo, hi) leads from state i to state
/// hi exactly when hi > i. Labels are "(lo+1,hi+1)" in (hi, lo) order.
FiniteDfa build_sn_dfa(std::size_t n);

/// Per-state number of accepting paths (length zero included).
struct PathCountTable {
  std::vector<BigInt> counts;

  const BigInt& operator[](StateId s) const { return counts[s]; }
  std::size_t size() const { return counts.size(); }
};

/// Reachable from the initial state and co-reachable to some final state.
std::vector<bool> useful_states(const FiniteDfa& dfa);

/// pi_a = [a final] + sum over edges (a, e, b) of pi_b, for useful states;
/// 0 elsewhere. Throws CyclicLanguage if the useful states contain a cycle.
PathCountTable count_paths(const FiniteDfa& dfa);

/// A DFA with the uniform-word probability assignment: an edge (a, e, b) is
/// taken with probability pi_b / pi_a and state a halts with probability
/// [a final] / pi_a. Every accepted word is then generated with probability
/// 1 / |L|.
class Dpfa {
 public:
  const FiniteDfa& dfa() const { return dfa_; }
  const PathCountTable& counts() const { return counts_; }

  /// |L| = pi of the initial state.
  const BigInt& language_size() const { return counts_[dfa_.initial()]; }

  /// Indexed like dfa().transitions().
  const Rational& transition_prob(std::size_t transition_index) const {
    return transition_prob_[transition_index];
  }
  const Rational& halt_prob(StateId s) const { return halt_prob_[s]; }

  /// Running sums of pi over outgoing(s), in symbol order. The last value is
  /// pi_s - [s final]; draws above it fall into the halting region.
  std::span<const BigInt> cumulative(StateId s) const;

  /// Position of the first transition of s inside dfa().transitions().
  std::size_t first_transition(StateId s) const;

 private:
  friend Dpfa assign_probabilities(const FiniteDfa& dfa);

  FiniteDfa dfa_;
  PathCountTable counts_;
  std::vector<Rational> transition_prob_;
  std::vector<Rational> halt_prob_;
  std::vector<BigInt> cumulative_;
};

/// Throws CyclicLanguage, or UselessState if any state is useless (prune with
/// remove_useless first).
Dpfa assign_probabilities(const FiniteDfa& dfa);

/// Keeps the useful states, renumbered in increasing id order. Throws
/// EmptyLanguage when the initial state is not useful.
FiniteDfa remove_useless(const FiniteDfa& dfa);

/// Language-equivalent DFA with the minimum number of states. States are
/// numbered in breadth-first order from the initial state, following edges
/// in symbol order, so equal languages give identical results.
FiniteDfa minimize(const FiniteDfa& dfa);

using SymbolWord = std::vector<SymbolId>;

/// Length first, then the leftmost differing symbol id.
std::strong_ordering compare_symbol_words(std::span<const SymbolId> a,
                                          std::span<const SymbolId> b);

/// Every accepted word, sorted by compare_symbol_words. Throws CyclicLanguage
/// or TooLarge when |L| > max_count.
std::vector<SymbolWord> enumerate_language(const FiniteDfa& dfa,
                                           std::size_t max_count);

/// Builds the trie of `words` (prefix states included; only the words
/// themselves are final). Symbols index into `alphabet`.
FiniteDfa dfa_from_words(std::span<const SymbolWord> words,
                         std::vector<std::string> alphabet);

/// Line-based interchange format:
///
///   states N initial I finals i,j,...      ("-" when there are no finals)
///   alphabet s0 s1 ...                      (labels in symbol order)
///   from symbol to                          (one line per transition)
///
/// Symbols in transition lines are written as labels. Blank lines and lines
/// starting with '#' are ignored when reading. If the alphabet line is
/// missing, labels are numbered in order of first appearance.
std::string write_dfa_text(const FiniteDfa& dfa);
void write_dfa_text(std::ostream& out, const FiniteDfa& dfa);
FiniteDfa read_dfa_text(std::string_view text);

}  // namespace permpfa
