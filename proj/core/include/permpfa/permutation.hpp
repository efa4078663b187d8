#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permpfa {

using Index = std::uint32_t;

/// A bijection on {0, ..., n-1} stored in one-line form: mapping()[i] is the
/// image of i. Indices are 0-based; only the cycle rendering is 1-based.
class Permutation {
 public:
  /// Throws InvalidArgument unless `mapping` is a bijection of degree >= 1.
  explicit Permutation(std::vector<Index> mapping);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return mapping_.size(); }
  Index operator[](std::size_t i) const { return mapping_[i]; }
  std::span<const Index> mapping() const { return mapping_; }

  bool is_identity() const;

  /// Number of cycles, fixed points included.
  std::size_t cycle_count() const;

  /// Largest point with p(x) != x, if any.
  std::optional<Index> largest_moved_point() const;

  /// "[2,0,1]" (0-based images).
  std::string to_one_line() const;

  /// "(1,2,3)(4,5)" (1-based, fixed points omitted); "()" for the identity.
  std::string to_cycles() const;

  /// Accepts one-line form "[2,0,1]" or cycle form "(1,2,3)(4,5)". A cycle
  /// string has no intrinsic degree: it is taken from `degree` when given,
  /// otherwise from the largest point mentioned. Throws ParseError.
  static Permutation parse(std::string_view text,
                           std::optional<std::size_t> degree = std::nullopt);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) {
    return a.mapping_ <=> b.mapping_;
  }

 private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<Index> mapping)
      : mapping_(std::move(mapping)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation invert(const Permutation&);

  std::vector<Index> mapping_;
};

/// Right-to-left composition: result[i] = p[q[i]] (q is applied first).
/// Throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);

Permutation invert(const Permutation& p);

/// A transposition (lo hi) with lo < hi, 0-based.
///
/// Transpositions are ordered by (hi, lo): (0,1) < (0,2) < (1,2) < (0,3) ...
/// This is the symbol order of the canonical-form alphabet and the column
/// order of the hardware ROM.
struct Transposition {
  Index lo = 0;
  Index hi = 1;

  /// Throws InvalidArgument unless a != b; the pair is sorted.
  static Transposition of(Index a, Index b);

  Permutation as_permutation(std::size_t degree) const;

  /// "(1,2)" style, 1-based.
  std::string to_string() const;

  friend bool operator==(const Transposition&, const Transposition&) = default;
  friend std::strong_ordering operator<=>(const Transposition& a,
                                          const Transposition& b) {
    if (auto c = a.hi <=> b.hi; c != 0) return c;
    return a.lo <=> b.lo;
  }
};

/// Position of `t` in the (hi, lo) symbol order: hi*(hi-1)/2 + lo.
std::size_t symbol_index(Transposition t);

/// Inverse of symbol_index.
Transposition symbol_at(std::size_t index);

/// All transpositions of degree n in symbol order.
std::vector<Transposition> transposition_alphabet(std::size_t degree);

using Word = std::vector<Transposition>;

/// Applies the factors right to left (the last factor acts first). Accepts
/// any word, canonical or not. Throws IndexOutOfRange.
Permutation evaluate_word(std::span<const Transposition> word,
                          std::size_t degree);

/// Length first, then the leftmost differing symbol under the (hi, lo) order.
std::strong_ordering compare_words(std::span<const Transposition> a,
                                   std::span<const Transposition> b);

/// A transposition word whose hi components strictly increase; these are
/// exactly the minimum-length, order-least representatives of S_n.
class CanonicalWord {
 public:
  /// Throws InvalidArgument if the ascending-hi invariant is violated or an
  /// index is out of range.
  CanonicalWord(std::size_t degree, Word factors);

  std::size_t degree() const { return degree_; }
  const Word& factors() const& { return factors_; }
  Word factors() && { return std::move(factors_); }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  Permutation evaluate() const { return evaluate_word(factors_, degree_); }

  std::string to_string() const;

  friend bool operator==(const CanonicalWord&, const CanonicalWord&) = default;

 private:
  std::size_t degree_;
  Word factors_;
};

/// True if the hi components of `word` strictly increase.
bool is_canonical(std::span<const Transposition> word);

/// The unique canonical word evaluating to p.
CanonicalWord factorize_canonical(const Permutation& p);

}  // namespace permpfa

template <>
struct std::hash<permpfa::Permutation> {
  std::size_t operator()(const permpfa::Permutation& p) const noexcept;
};
