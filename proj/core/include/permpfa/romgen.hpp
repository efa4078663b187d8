#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permpfa/numeric.hpp"
#include "permpfa/permutation.hpp"
#include "permpfa/rng.hpp"
#include "permpfa/sampler.hpp"

namespace permpfa {

/// Cumulative transition thresholds of the M_n automaton scaled by n!.
///
/// Row a is state q_{a+1}; column c is the transposition symbol_at(c), i.e.
/// columns run (0,1), (0,2), (1,2), (0,3), ... Invalid columns (hi <= a) have
/// zero width and repeat the running value. Every row is non-decreasing and
/// ends at n! - (a+1)!; draws above the last entry halt.
class RomTable {
 public:
  /// Throws InvalidArgument unless there are n rows of n(n-1)/2 entries in
  /// [0, n!], each row non-decreasing.
  RomTable(std::size_t degree, std::vector<std::vector<BigInt>> rows);

  std::size_t degree() const { return degree_; }
  std::size_t columns() const { return degree_ * (degree_ - 1) / 2; }
  const std::vector<std::vector<BigInt>>& rows() const { return rows_; }
  std::span<const BigInt> row(std::size_t state) const { return rows_[state]; }

  /// n!, the fixed draw range of the datapath.
  const BigInt& scale() const { return scale_; }

  /// Bits per entry: ceil(log2(n! + 1)).
  std::size_t entry_bits() const;

  friend bool operator==(const RomTable& a, const RomTable& b) {
    return a.degree_ == b.degree_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t degree_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt scale_;
};

/// Builds the table from the path counts of build_sn_dfa(n): the width of an
/// edge from state a to state b is pi_b * n! / pi_a. n >= 2.
RomTable build_rom(std::size_t n);

enum class RomFormat { kDecimalCsv, kHexMeminit };

/// kDecimalCsv: one row per line, entries in decimal separated by commas.
/// kHexMeminit: one row per line, each entry as uppercase hex zero-padded to
/// ceil(entry_bits / 4) digits, entries concatenated first column first with
/// no separator. Both end every line with '\n'.
std::string emit_rom_file(const RomTable& rom, RomFormat format);
void emit_rom_file(std::ostream& out, const RomTable& rom, RomFormat format);

/// Inverse of emit_rom_file. The degree is the number of lines. Throws
/// ParseError.
RomTable parse_rom_file(std::string_view text, RomFormat format);

/// Column c -> (i, j), 0-based, under the (hi, lo) column order. Throws
/// IndexOutOfRange unless c < n(n-1)/2.
Transposition index_encode(std::size_t column, std::size_t n);

/// (i, j) -> column.
std::size_t index_of(Transposition t);

/// One datapath round: the first column whose region has positive width and
/// whose entry is >= r, or nothing when r exceeds every entry (terminate).
std::optional<std::size_t> select_column(std::span<const BigInt> row,
                                         const BigInt& r);

/// Functional model of the shuffling datapath. State starts at 0; each round
/// draws r on [1, n!], selects a column, swaps positions (i, j) and moves to
/// state j, until a draw terminates.
SwapTrace simulate_datapath(const RomTable& rom, RandomSource& rng);

template <class T>
SwapTrace simulate_datapath(const RomTable& rom, RandomSource& rng,
                            std::span<T> items) {
  if (items.size() != rom.degree()) {
    throw InvalidArgument("simulate_datapath: array length does not match n");
  }
  SwapTrace trace = simulate_datapath(rom, rng);
  apply_swaps(items, trace);
  return trace;
}

}  // namespace permpfa
