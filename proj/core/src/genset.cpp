#include "permpfa/genset.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "permpfa/errors.hpp"

namespace permpfa {

namespace {

BigInt pow_ui(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt to_big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// 1 + gamma + ... + gamma^m
BigInt geometric_sum(std::uint64_t gamma, unsigned long m) {
  const BigInt g = to_big(gamma);
  BigInt numerator = pow_ui(g, m + 1) - 1;
  BigInt out;
  mpz_divexact(out.get_mpz_t(), numerator.get_mpz_t(), BigInt(g - 1).get_mpz_t());
  return out;
}

}  // namespace

GeneratingSet::GeneratingSet(std::size_t degree,
                             std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0) throw InvalidArgument("generating set degree must be >= 1");
  std::unordered_set<Permutation> seen;
  for (const auto& g : generators_) {
    if (g.degree() != degree_) {
      throw InvalidArgument("generator " + g.to_cycles() + " has degree " +
                            std::to_string(g.degree()) + ", expected " +
                            std::to_string(degree_));
    }
    if (g.is_identity()) throw InvalidArgument("identity is not a generator");
    if (!seen.insert(g).second) {
      throw InvalidArgument("duplicate generator " + g.to_cycles());
    }
  }
}

GeneratingSet GeneratingSet::transpositions(std::size_t n) {
  std::vector<Permutation> gens;
  for (const auto& t : transposition_alphabet(n)) {
    gens.push_back(t.as_permutation(n));
  }
  return GeneratingSet(n, std::move(gens));
}

GeneratingSet GeneratingSet::parse(std::string_view text,
                                   std::optional<std::size_t> degree) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  if (lines.empty()) throw ParseError("generating set file has no entries");

  std::size_t n = degree.value_or(0);
  if (!degree) {
    // Parse once without a degree to learn the largest point mentioned.
    for (const auto& line : lines) {
      n = std::max(n, Permutation::parse(line).degree());
    }
  }
  std::vector<Permutation> gens;
  for (const auto& line : lines) {
    if (line.front() == '[') {
      auto p = Permutation::parse(line);
      if (p.degree() != n) {
        throw ParseError("one-line generator '" + line + "' has degree " +
                         std::to_string(p.degree()) + ", expected " +
                         std::to_string(n));
      }
      gens.push_back(std::move(p));
    } else {
      gens.push_back(Permutation::parse(line, n));
    }
  }
  try {
    return GeneratingSet(n, std::move(gens));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("generating set: ") + e.what());
  }
}

std::vector<std::string> GeneratingSet::labels() const {
  std::vector<std::string> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.to_cycles());
  return out;
}

CanonicalTable bfs_canonical(const GeneratingSet& gens, std::size_t limit) {
  CanonicalTable table;
  table.degree = gens.degree();
  auto identity = Permutation::identity(gens.degree());
  table.words.emplace(identity, SymbolWord{});
  table.order.push_back(std::move(identity));
  if (limit < 1) throw LimitExceeded("limit must allow the identity");

  for (std::size_t head = 0; head < table.order.size(); ++head) {
    // order may reallocate below; copy the element and its word first.
    const Permutation current = table.order[head];
    const SymbolWord prefix = table.words.at(current);
    for (SymbolId s = 0; s < gens.size(); ++s) {
      Permutation next = compose(current, gens.generators()[s]);
      if (table.words.contains(next)) continue;
      if (table.order.size() >= limit) {
        throw LimitExceeded("generated group exceeds the limit of " +
                            std::to_string(limit) + " elements");
      }
      SymbolWord word = prefix;
      word.push_back(s);
      table.l_max = std::max(table.l_max, word.size());
      table.words.emplace(next, std::move(word));
      table.order.push_back(std::move(next));
    }
  }
  table.generates_full_group =
      BigInt(static_cast<unsigned long>(table.order.size())) ==
      factorial(static_cast<unsigned>(gens.degree()));
  return table;
}

FiniteDfa build_genset_dfa(const CanonicalTable& table,
                           const GeneratingSet& gens) {
  if (table.order.empty()) throw InvalidArgument("canonical table is empty");
  std::vector<SymbolWord> words;
  words.reserve(table.order.size());
  for (const auto& p : table.order) words.push_back(table.words.at(p));
  return minimize(dfa_from_words(words, gens.labels()));
}

Permutation evaluate_symbols(const GeneratingSet& gens,
                             std::span<const SymbolId> word) {
  auto result = Permutation::identity(gens.degree());
  for (SymbolId s : word) {
    if (s >= gens.size()) throw IndexOutOfRange("symbol beyond generating set");
    result = compose(result, gens.generators()[s]);
  }
  return result;
}

std::uint64_t min_gamma_exact(unsigned n, long double target_length) {
  if (n < 2) throw InvalidArgument("min_gamma_exact: n must be >= 2");
  if (!(target_length >= 1.0L)) {
    throw InvalidArgument(
        "min_gamma_exact: target length below 1 admits only the empty word");
  }
  const auto m = static_cast<unsigned long>(std::floor(target_length));
  const BigInt order = factorial(n);
  auto enough = [&](std::uint64_t gamma) {
    return geometric_sum(gamma, m) >= order;
  };
  if (enough(2)) return 2;
  std::uint64_t lo = 2;  // fails
  std::uint64_t hi = 4;
  while (!enough(hi)) {
    if (hi > std::numeric_limits<std::uint64_t>::max() / 2) {
      throw TooLarge("min_gamma_exact: answer exceeds 64 bits");
    }
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

long double l_max_lower_bound(unsigned n, std::uint64_t gamma) {
  if (n < 2 || gamma < 2) {
    throw InvalidArgument("l_max_lower_bound: needs n >= 2 and gamma >= 2");
  }
  const BigInt covered = to_big(gamma - 1) * factorial(n) + 1;
  const long double log_gamma = std::log(static_cast<long double>(gamma));
  return (log_big(covered) - log_gamma) / log_gamma;
}

long double l_max_asymptotic_bound(unsigned n, std::uint64_t gamma) {
  if (n < 2 || gamma < 2) {
    throw InvalidArgument("l_max_asymptotic_bound: needs n >= 2 and gamma >= 2");
  }
  const long double nn = n;
  return nn * std::log(nn) / (2.0L * std::log(static_cast<long double>(gamma)));
}

long double min_gamma_asymptotic(unsigned n, long double target_length,
                                 long double base) {
  if (!(base > 1.0L)) throw InvalidArgument("log base must exceed 1");
  if (!(target_length > 0.0L)) throw InvalidArgument("target length must be > 0");
  const long double nn = n;
  const long double log_b_n = std::log(nn) / std::log(base);
  return std::pow(base, (nn / 2.0L) * log_b_n / target_length);
}

long double sqrt_log_target(unsigned n, long double base) {
  if (!(base > 1.0L)) throw InvalidArgument("log base must exceed 1");
  const long double nn = n;
  return std::sqrt(nn) * std::log(nn) / std::log(base);
}

bool satisfies_length_bound(unsigned n, std::uint64_t gamma,
                            std::size_t l_max) {
  if (gamma < 2) throw InvalidArgument("gamma must be >= 2");
  return pow_ui(to_big(gamma), l_max + 1) >=
         to_big(gamma - 1) * factorial(n) + 1;
}

BoundReport compute_bounds(unsigned n, std::uint64_t gamma,
                           long double target_length, long double base) {
  BoundReport r;
  r.n = n;
  r.gamma = gamma;
  r.target_length = target_length;
  r.base = base;
  r.exact_min_gamma = min_gamma_exact(n, target_length);
  r.asymptotic_min_gamma = min_gamma_asymptotic(n, target_length, base);
  r.l_max_lower_bound = l_max_lower_bound(n, gamma);
  r.l_max_asymptotic = l_max_asymptotic_bound(n, gamma);
  return r;
}

bool verify_appendix_inequality(unsigned n, std::uint64_t gamma) {
  if (gamma < 1) return false;
  const BigInt g = to_big(gamma);
  const BigInt lhs = (g - 1) * factorial(n) + 1;
  const BigInt nn = n;
  return lhs * lhs > g * g * pow_ui(nn, n);
}

bool lemma_binomial_bound(unsigned n, unsigned k) {
  if (n == 0 || k >= n) throw InvalidArgument("lemma needs 0 <= k < n");
  BigInt binomial;
  mpz_bin_uiui(binomial.get_mpz_t(), n - 1, k);
  return binomial <= pow_ui(BigInt(n), k);
}

bool lemma_power_bound(unsigned n) {
  if (n == 0) throw InvalidArgument("lemma needs n >= 1");
  return pow_ui(BigInt(n), n) >= pow_ui(BigInt(n + 1), n - 1);
}

bool lemma_factorial_bound(unsigned n) {
  const BigInt f = factorial(n);
  return f * f > 4 * pow_ui(BigInt(n), n);
}

}  // namespace permpfa
