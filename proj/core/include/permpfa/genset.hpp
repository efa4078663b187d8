#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "permpfa/automaton.hpp"
#include "permpfa/numeric.hpp"
#include "permpfa/permutation.hpp"

namespace permpfa {

/// An ordered list of distinct non-identity permutations of a common degree.
/// List order is the symbol order. Inverses are not added.
class GeneratingSet {
 public:
  /// Throws InvalidArgument on duplicates, identities or mixed degrees.
  GeneratingSet(std::size_t degree, std::vector<Permutation> generators);

  /// All transpositions of S_n in (hi, lo) order.
  static GeneratingSet transpositions(std::size_t n);

  /// One permutation per line, cycle or one-line notation. Blank lines and
  /// '#' comments are skipped. The degree is `degree` if given, else the
  /// largest one-line length or cycle point. Throws ParseError.
  static GeneratingSet parse(std::string_view text,
                             std::optional<std::size_t> degree = std::nullopt);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// Cycle-notation labels, used as the DFA alphabet.
  std::vector<std::string> labels() const;

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
};

/// Shortest words over the generators, one per element of the generated
/// group. A word w_1 ... w_k names g_{w_1} o ... o g_{w_k}.
struct CanonicalTable {
  std::size_t degree = 0;
  /// Elements in breadth-first discovery order; order[0] is the identity.
  std::vector<Permutation> order;
  std::unordered_map<Permutation, SymbolWord> words;
  std::size_t l_max = 0;
  bool generates_full_group = false;

  std::size_t group_size() const { return order.size(); }
  const SymbolWord& word(const Permutation& p) const { return words.at(p); }
};

/// Breadth-first search of the Cayley graph from the identity, expanding by
/// right multiplication with the generators in list order. The first word to
/// reach an element is its canonical word: shortest, then least under
/// compare_symbol_words. Throws LimitExceeded if the group has more than
/// `limit` elements.
CanonicalTable bfs_canonical(const GeneratingSet& gens, std::size_t limit);

/// Minimized trie of all canonical words (every state final).
FiniteDfa build_genset_dfa(const CanonicalTable& table,
                           const GeneratingSet& gens);

/// Evaluates a word over the generators.
Permutation evaluate_symbols(const GeneratingSet& gens,
                             std::span<const SymbolId> word);

/// Least gamma >= 2 with 1 + gamma + ... + gamma^m >= n!, where m = floor(L)
/// is the largest admissible integer word length. Exact integer arithmetic.
/// Throws InvalidArgument when n < 2 or L < 1 (no gamma can work).
std::uint64_t min_gamma_exact(unsigned n, long double target_length);

/// (log((gamma-1) n! + 1) - log gamma) / log gamma; base independent.
long double l_max_lower_bound(unsigned n, std::uint64_t gamma);

/// n log n / (2 log gamma); base independent.
long double l_max_asymptotic_bound(unsigned n, std::uint64_t gamma);

/// b^((n/2) log_b(n) / L).
long double min_gamma_asymptotic(unsigned n, long double target_length,
                                 long double base);

/// sqrt(n) * log_b(n).
long double sqrt_log_target(unsigned n, long double base);

/// True if gamma^(l_max+1) >= (gamma-1) n! + 1, i.e. words of length at most
/// l_max over gamma symbols could cover S_n.
bool satisfies_length_bound(unsigned n, std::uint64_t gamma, std::size_t l_max);

struct BoundReport {
  unsigned n = 0;
  std::uint64_t gamma = 0;
  long double target_length = 0;
  long double base = 0;
  std::uint64_t exact_min_gamma = 0;
  long double asymptotic_min_gamma = 0;
  long double l_max_lower_bound = 0;
  long double l_max_asymptotic = 0;
};

BoundReport compute_bounds(unsigned n, std::uint64_t gamma,
                           long double target_length, long double base);

/// (gamma-1) n! + 1 > gamma n^(n/2), compared exactly as
/// ((gamma-1) n! + 1)^2 > gamma^2 n^n.
bool verify_appendix_inequality(unsigned n, std::uint64_t gamma);

/// C(n-1, k) <= n^k.
bool lemma_binomial_bound(unsigned n, unsigned k);

/// n^n >= (n+1)^(n-1).
bool lemma_power_bound(unsigned n);

/// n!/2 > n^(n/2), compared as (n!)^2 > 4 n^n.
bool lemma_factorial_bound(unsigned n);

}  // namespace permpfa
