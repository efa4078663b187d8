#include "permpfa/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "permpfa/errors.hpp"

namespace permpfa {

namespace {

bool is_bijection(const std::vector<Index>& mapping) {
  std::vector<bool> seen(mapping.size(), false);
  for (Index v : mapping) {
    if (v >= mapping.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }
  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_space();
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("permutation '" + std::string(text_) + "': " + what +
                     " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

constexpr std::uint64_t kMaxParsedDegree = 1u << 24;

}  // namespace

Permutation::Permutation(std::vector<Index> mapping)
    : mapping_(std::move(mapping)) {
  if (mapping_.empty()) throw InvalidArgument("permutation degree must be >= 1");
  if (!is_bijection(mapping_)) {
    throw InvalidArgument("mapping is not a bijection on {0..n-1}");
  }
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) throw InvalidArgument("permutation degree must be >= 1");
  std::vector<Index> mapping(degree);
  std::iota(mapping.begin(), mapping.end(), Index{0});
  return Permutation(Unchecked{}, std::move(mapping));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] != i) return false;
  }
  return true;
}

std::size_t Permutation::cycle_count() const {
  std::vector<bool> seen(mapping_.size(), false);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < mapping_.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (Index x = static_cast<Index>(start); !seen[x]; x = mapping_[x]) {
      seen[x] = true;
    }
  }
  return cycles;
}

std::optional<Index> Permutation::largest_moved_point() const {
  for (std::size_t i = mapping_.size(); i-- > 0;) {
    if (mapping_[i] != i) return static_cast<Index>(i);
  }
  return std::nullopt;
}

std::string Permutation::to_one_line() const {
  std::string out = "[";
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(mapping_[i]);
  }
  out += ']';
  return out;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t start = 0; start < mapping_.size(); ++start) {
    if (seen[start] || mapping_[start] == start) continue;
    out += '(';
    bool first = true;
    for (Index x = static_cast<Index>(start); !seen[x]; x = mapping_[x]) {
      seen[x] = true;
      if (!first) out += ',';
      out += std::to_string(x + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation Permutation::parse(std::string_view text,
                               std::optional<std::size_t> degree) {
  Scanner in(text);
  if (in.consume('[')) {
    std::vector<Index> mapping;
    if (!in.consume(']')) {
      do {
        const auto v = in.number();
        if (v >= kMaxParsedDegree) in.fail("index too large");
        mapping.push_back(static_cast<Index>(v));
      } while (in.consume(','));
      in.expect(']');
    }
    if (!in.done()) in.fail("trailing characters");
    if (degree && *degree != mapping.size()) {
      throw ParseError("permutation '" + std::string(text) + "' has degree " +
                       std::to_string(mapping.size()) + ", expected " +
                       std::to_string(*degree));
    }
    if (mapping.empty() || !is_bijection(mapping)) {
      throw ParseError("permutation '" + std::string(text) +
                       "' is not a bijection on {0..n-1}");
    }
    return Permutation(Unchecked{}, std::move(mapping));
  }

  std::vector<std::vector<Index>> cycles;
  std::uint64_t largest = 0;
  if (in.done()) in.fail("empty input");
  while (!in.done()) {
    in.expect('(');
    std::vector<Index> cycle;
    if (!in.consume(')')) {
      do {
        const auto v = in.number();
        if (v == 0) in.fail("cycle points are 1-based");
        if (v > kMaxParsedDegree) in.fail("point too large");
        largest = std::max(largest, v);
        cycle.push_back(static_cast<Index>(v - 1));
      } while (in.consume(','));
      in.expect(')');
    }
    cycles.push_back(std::move(cycle));
  }
  const std::size_t n = degree.value_or(std::max<std::uint64_t>(largest, 1));
  if (n == 0) throw ParseError("permutation degree must be >= 1");
  if (largest > n) {
    throw ParseError("permutation '" + std::string(text) + "' mentions point " +
                     std::to_string(largest) + " beyond degree " +
                     std::to_string(n));
  }
  std::vector<Index> mapping(n);
  std::iota(mapping.begin(), mapping.end(), Index{0});
  std::vector<bool> used(n, false);
  // Cycles are listed as disjoint; a repeated point is rejected rather than
  // composed.
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (used[cycle[k]]) {
        throw ParseError("permutation '" + std::string(text) +
                         "': cycles are not disjoint");
      }
      used[cycle[k]] = true;
      mapping[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(Unchecked{}, std::move(mapping));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) +
                         " and " + std::to_string(q.degree()));
  }
  std::vector<Index> result(p.degree());
  for (std::size_t i = 0; i < result.size(); ++i) result[i] = p[q[i]];
  return Permutation(Permutation::Unchecked{}, std::move(result));
}

Permutation invert(const Permutation& p) {
  std::vector<Index> result(p.degree());
  for (std::size_t i = 0; i < result.size(); ++i) {
    result[p[i]] = static_cast<Index>(i);
  }
  return Permutation(Permutation::Unchecked{}, std::move(result));
}

Transposition Transposition::of(Index a, Index b) {
  if (a == b) throw InvalidArgument("transposition needs two distinct points");
  return a < b ? Transposition{a, b} : Transposition{b, a};
}

Permutation Transposition::as_permutation(std::size_t degree) const {
  if (hi >= degree) {
    throw IndexOutOfRange("transposition " + to_string() +
                          " out of range for degree " + std::to_string(degree));
  }
  auto p = Permutation::identity(degree);
  std::vector<Index> mapping(p.mapping().begin(), p.mapping().end());
  std::swap(mapping[lo], mapping[hi]);
  return Permutation(std::move(mapping));
}

std::string Transposition::to_string() const {
  return "(" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + ")";
}

std::size_t symbol_index(Transposition t) {
  return static_cast<std::size_t>(t.hi) * (t.hi - 1) / 2 + t.lo;
}

Transposition symbol_at(std::size_t index) {
  // Largest hi with hi*(hi-1)/2 <= index.
  auto hi = static_cast<std::size_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (hi * (hi - 1) / 2 > index) --hi;
  while ((hi + 1) * hi / 2 <= index) ++hi;
  const std::size_t lo = index - hi * (hi - 1) / 2;
  return Transposition{static_cast<Index>(lo), static_cast<Index>(hi)};
}

std::vector<Transposition> transposition_alphabet(std::size_t degree) {
  std::vector<Transposition> out;
  if (degree < 2) return out;
  out.reserve(degree * (degree - 1) / 2);
  for (Index hi = 1; hi < degree; ++hi) {
    for (Index lo = 0; lo < hi; ++lo) out.push_back({lo, hi});
  }
  return out;
}

Permutation evaluate_word(std::span<const Transposition> word,
                          std::size_t degree) {
  auto p = Permutation::identity(degree);
  std::vector<Index> mapping(p.mapping().begin(), p.mapping().end());
  // mapping currently represents the suffix product; prepending a factor t
  // gives t o suffix, i.e. swap the values lo and hi.
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->lo >= it->hi || it->hi >= degree) {
      throw IndexOutOfRange("word factor " + it->to_string() +
                            " out of range for degree " +
                            std::to_string(degree));
    }
    for (auto& v : mapping) {
      if (v == it->lo) {
        v = it->hi;
      } else if (v == it->hi) {
        v = it->lo;
      }
    }
  }
  return Permutation(std::move(mapping));
}

std::strong_ordering compare_words(std::span<const Transposition> a,
                                   std::span<const Transposition> b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_canonical(std::span<const Transposition> word) {
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k].lo >= word[k].hi) return false;
    if (k + 1 < word.size() && word[k].hi >= word[k + 1].hi) return false;
  }
  return true;
}

CanonicalWord::CanonicalWord(std::size_t degree, Word factors)
    : degree_(degree), factors_(std::move(factors)) {
  if (degree_ == 0) throw InvalidArgument("degree must be >= 1");
  if (!is_canonical(factors_)) {
    throw InvalidArgument("word is not canonical (hi must strictly increase)");
  }
  if (!factors_.empty() && factors_.back().hi >= degree_) {
    throw InvalidArgument("word factor out of range for degree " +
                          std::to_string(degree_));
  }
}

std::string CanonicalWord::to_string() const {
  if (factors_.empty()) return "e";
  std::string out;
  for (const auto& t : factors_) out += t.to_string();
  return out;
}

CanonicalWord factorize_canonical(const Permutation& p) {
  std::vector<Index> mapping(p.mapping().begin(), p.mapping().end());
  std::vector<Index> inverse(mapping.size());
  for (std::size_t i = 0; i < mapping.size(); ++i) inverse[mapping[i]] = Index(i);

  Word reversed;
  // Peel off the rightmost factor (p^-1(m) m) for the largest moved point m;
  // p o (p^-1(m) m) fixes m and everything above it.
  for (std::size_t m = mapping.size(); m-- > 1;) {
    if (mapping[m] == m) continue;
    const Index source = inverse[m];
    const Index displaced = mapping[m];
    reversed.push_back(Transposition{source, static_cast<Index>(m)});
    mapping[source] = displaced;
    inverse[displaced] = source;
    mapping[m] = static_cast<Index>(m);
    inverse[m] = static_cast<Index>(m);
  }
  std::reverse(reversed.begin(), reversed.end());
  return CanonicalWord(p.degree(), std::move(reversed));
}

}  // namespace permpfa

std::size_t std::hash<permpfa::Permutation>::operator()(
    const permpfa::Permutation& p) const noexcept {
  // FNV-1a over the images.
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.mapping()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}
