#include "permpfa/romgen.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "permpfa/automaton.hpp"
#include "permpfa/errors.hpp"

namespace permpfa {

RomTable::RomTable(std::size_t degree, std::vector<std::vector<BigInt>> rows)
    : degree_(degree), rows_(std::move(rows)) {
  if (degree_ < 2) throw InvalidArgument("ROM degree must be >= 2");
  scale_ = factorial(static_cast<unsigned>(degree_));
  if (rows_.size() != degree_) {
    throw InvalidArgument("ROM needs " + std::to_string(degree_) + " rows, got " +
                          std::to_string(rows_.size()));
  }
  for (const auto& row : rows_) {
    if (row.size() != columns()) {
      throw InvalidArgument("ROM row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(columns()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (sgn(row[c]) < 0 || row[c] > scale_) {
        throw InvalidArgument("ROM entry outside [0, n!]");
      }
      if (c > 0 && row[c] < row[c - 1]) {
        throw InvalidArgument("ROM row is not non-decreasing");
      }
    }
  }
}

std::size_t RomTable::entry_bits() const { return bit_length(scale_); }

RomTable build_rom(std::size_t n) {
  if (n < 2) throw InvalidArgument("build_rom: n must be >= 2");
  const auto counts = count_paths(build_sn_dfa(n));
  const BigInt scale = factorial(static_cast<unsigned>(n));
  const std::size_t columns = n * (n - 1) / 2;

  std::vector<std::vector<BigInt>> rows(n);
  for (std::size_t state = 0; state < n; ++state) {
    auto& row = rows[state];
    row.reserve(columns);
    BigInt running = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      const Transposition t = symbol_at(c);
      if (t.hi > state) {
        BigInt width = counts[t.hi] * scale;
        mpz_divexact(width.get_mpz_t(), width.get_mpz_t(),
                     counts[static_cast<StateId>(state)].get_mpz_t());
        running += width;
      }
      row.push_back(running);
    }
  }
  return RomTable(n, std::move(rows));
}

void emit_rom_file(std::ostream& out, const RomTable& rom, RomFormat format) {
  const std::size_t digits = (rom.entry_bits() + 3) / 4;
  for (const auto& row : rom.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (format == RomFormat::kDecimalCsv) {
        if (c) out << ',';
        out << row[c].get_str(10);
      } else {
        std::string hex = row[c].get_str(16);
        std::transform(hex.begin(), hex.end(), hex.begin(), [](char ch) {
          return static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        });
        out << std::string(digits - hex.size(), '0') << hex;
      }
    }
    out << '\n';
  }
}

std::string emit_rom_file(const RomTable& rom, RomFormat format) {
  std::ostringstream out;
  emit_rom_file(out, rom, format);
  return out.str();
}

RomTable parse_rom_file(std::string_view text, RomFormat format) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  const std::size_t n = lines.size();
  if (n < 2) throw ParseError("ROM file needs at least two rows");
  const std::size_t columns = n * (n - 1) / 2;
  const std::size_t digits =
      (bit_length(factorial(static_cast<unsigned>(n))) + 3) / 4;

  auto parse_entry = [](const std::string& token, int base) {
    BigInt v;
    if (token.empty() || v.set_str(token, base) != 0 || sgn(v) < 0) {
      throw ParseError("bad ROM entry '" + token + "'");
    }
    return v;
  };

  std::vector<std::vector<BigInt>> rows;
  for (const auto& line : lines) {
    std::vector<BigInt> row;
    if (format == RomFormat::kDecimalCsv) {
      std::size_t start = 0;
      while (true) {
        const auto comma = line.find(',', start);
        const auto token = line.substr(start, comma == std::string::npos
                                                  ? std::string::npos
                                                  : comma - start);
        if (!std::all_of(token.begin(), token.end(), [](char ch) {
              return std::isdigit(static_cast<unsigned char>(ch));
            })) {
          throw ParseError("bad ROM entry '" + token + "'");
        }
        row.push_back(parse_entry(token, 10));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      if (line.size() != columns * digits) {
        throw ParseError("hex ROM line has " + std::to_string(line.size()) +
                         " digits, expected " +
                         std::to_string(columns * digits));
      }
      for (std::size_t c = 0; c < columns; ++c) {
        const auto token = line.substr(c * digits, digits);
        if (!std::all_of(token.begin(), token.end(), [](char ch) {
              return std::isdigit(static_cast<unsigned char>(ch)) ||
                     (ch >= 'A' && ch <= 'F');
            })) {
          throw ParseError("bad hex ROM entry '" + token + "'");
        }
        row.push_back(parse_entry(token, 16));
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return RomTable(n, std::move(rows));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("ROM file: ") + e.what());
  }
}

Transposition index_encode(std::size_t column, std::size_t n) {
  if (n < 2 || column >= n * (n - 1) / 2) {
    throw IndexOutOfRange("column " + std::to_string(column) +
                          " out of range for n = " + std::to_string(n));
  }
  return symbol_at(column);
}

std::size_t index_of(Transposition t) { return symbol_index(t); }

std::optional<std::size_t> select_column(std::span<const BigInt> row,
                                         const BigInt& r) {
  // One comparator per column; zero-width regions can never be selected.
  const BigInt zero = 0;
  const BigInt* previous = &zero;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] > *previous && r <= row[c]) return c;
    previous = &row[c];
  }
  return std::nullopt;
}

SwapTrace simulate_datapath(const RomTable& rom, RandomSource& rng) {
  SwapTrace trace;
  std::size_t state = 0;
  for (;;) {
    const BigInt r = rng.uniform(rom.scale());
    const auto column = select_column(rom.row(state), r);
    if (!column) break;
    const Transposition t = index_encode(*column, rom.degree());
    trace.swaps.push_back({t.lo, t.hi});
    state = t.hi;
  }
  trace.rounds = trace.swaps.size();
  trace.halted_in_state = static_cast<StateId>(state);
  return trace;
}

}  // namespace permpfa
