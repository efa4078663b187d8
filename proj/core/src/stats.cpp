#include "permpfa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>

#include "json.hpp"
#include "permpfa/errors.hpp"

namespace permpfa {

namespace {

std::vector<Permutation> label_actions(const FiniteDfa& dfa,
                                       std::size_t degree) {
  std::vector<Permutation> actions;
  for (const auto& label : dfa.alphabet()) {
    try {
      actions.push_back(Permutation::parse(label, degree));
    } catch (const ParseError& e) {
      throw InvalidArgument("symbol '" + label +
                            "' is not a permutation: " + e.what());
    }
  }
  return actions;
}

void check_path_budget(const Dpfa& dpfa, std::size_t max_paths) {
  if (dpfa.language_size() > BigInt(static_cast<unsigned long>(max_paths))) {
    throw TooLarge("language has " + dpfa.language_size().get_str() +
                   " words, limit is " + std::to_string(max_paths));
  }
}

Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return sgn(d) < 0 ? Rational(-d) : d;
}

void finish_exact(DistributionReport& report) {
  report.group_size = report.probabilities.size();
  report.total_mass = 0;
  report.max_deviation = 0;
  if (report.group_size == 0) return;
  const Rational uniform(1, static_cast<unsigned long>(report.group_size));
  for (const auto& [perm, p] : report.probabilities) {
    report.total_mass += p;
    report.max_deviation = std::max(report.max_deviation, abs_diff(p, uniform));
  }
  report.total_mass.canonicalize();
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_engine_degree(Engine engine, std::size_t n) {
  if (n == 0) throw InvalidArgument("degree must be >= 1");
  if (engine == Engine::kDatapath && n < 2) {
    throw InvalidArgument("datapath engine needs n >= 2");
  }
}

}  // namespace

DistributionReport exact_distribution(const Dpfa& dpfa, std::size_t degree,
                                      std::size_t max_paths) {
  check_path_budget(dpfa, max_paths);
  const FiniteDfa& dfa = dpfa.dfa();
  const auto actions = label_actions(dfa, degree);

  DistributionReport report;
  report.mode = DistributionReport::Mode::kExact;
  report.degree = degree;

  auto walk = [&](auto&& self, StateId state, const Permutation& element,
                  const Rational& mass) -> void {
    if (dfa.is_final(state)) {
      Rational p = mass * dpfa.halt_prob(state);
      p.canonicalize();
      auto [it, inserted] = report.probabilities.try_emplace(element, p);
      if (!inserted) {
        it->second += p;
        it->second.canonicalize();
      }
    }
    const auto edges = dfa.outgoing(state);
    const std::size_t base = dpfa.first_transition(state);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      Rational next = mass * dpfa.transition_prob(base + k);
      next.canonicalize();
      self(self, edges[k].to, compose(element, actions[edges[k].symbol]), next);
    }
  };
  walk(walk, dfa.initial(), Permutation::identity(degree), Rational(1));
  finish_exact(report);
  return report;
}

std::vector<std::pair<SymbolWord, Rational>> exact_word_probabilities(
    const Dpfa& dpfa, std::size_t max_paths) {
  check_path_budget(dpfa, max_paths);
  const FiniteDfa& dfa = dpfa.dfa();
  std::vector<std::pair<SymbolWord, Rational>> out;
  SymbolWord word;

  auto walk = [&](auto&& self, StateId state, const Rational& mass) -> void {
    if (dfa.is_final(state)) {
      Rational p = mass * dpfa.halt_prob(state);
      p.canonicalize();
      out.emplace_back(word, p);
    }
    const auto edges = dfa.outgoing(state);
    const std::size_t base = dpfa.first_transition(state);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      Rational next = mass * dpfa.transition_prob(base + k);
      next.canonicalize();
      word.push_back(edges[k].symbol);
      self(self, edges[k].to, next);
      word.pop_back();
    }
  };
  walk(walk, dfa.initial(), Rational(1));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return compare_symbol_words(a.first, b.first) < 0;
  });
  return out;
}

DistributionReport exact_datapath_distribution(const RomTable& rom,
                                               std::uint64_t max_draws) {
  const std::size_t n = rom.degree();
  if (rom.scale() > BigInt(static_cast<unsigned long>(max_draws))) {
    throw TooLarge("n! = " + rom.scale().get_str() + " draws per round, limit " +
                   std::to_string(max_draws));
  }
  const unsigned long draws = rom.scale().get_ui();
  const std::size_t columns = rom.columns();

  // hits[state][column] = #{r : select_column picks column}; the extra slot
  // counts the draws that select nothing (halt).
  std::vector<std::vector<unsigned long>> hits(
      n, std::vector<unsigned long>(columns + 1, 0));
  for (std::size_t state = 0; state < n; ++state) {
    const auto row = rom.row(state);
    for (unsigned long r = 1; r <= draws; ++r) {
      const auto column = select_column(row, BigInt(r));
      ++hits[state][column ? *column : columns];
    }
  }

  DistributionReport report;
  report.mode = DistributionReport::Mode::kExact;
  report.degree = n;
  std::vector<Index> items(n);
  std::iota(items.begin(), items.end(), Index{0});

  auto walk = [&](auto&& self, std::size_t state, const Rational& mass) -> void {
    const auto& h = hits[state];
    if (h[columns] > 0) {
      Rational p = mass * Rational(h[columns], draws);
      p.canonicalize();
      Permutation perm(items);
      auto [it, inserted] = report.probabilities.try_emplace(perm, p);
      if (!inserted) {
        it->second += p;
        it->second.canonicalize();
      }
    }
    for (std::size_t c = 0; c < columns; ++c) {
      if (h[c] == 0) continue;
      const Transposition t = index_encode(c, n);
      Rational next = mass * Rational(h[c], draws);
      next.canonicalize();
      std::swap(items[t.lo], items[t.hi]);
      self(self, t.hi, next);
      std::swap(items[t.lo], items[t.hi]);
    }
  };
  walk(walk, 0, Rational(1));
  finish_exact(report);
  return report;
}

ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected) {
  if (observed.size() != expected.size()) {
    throw InvalidArgument("chi_square: observed and expected differ in size");
  }
  if (observed.size() < 2) {
    throw InvalidArgument("chi_square: need at least two cells");
  }
  ChiSquareResult result;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] >= 5.0)) {
      throw UnderpoweredTest("expected count " + format_real(expected[i]) +
                             " in cell " + std::to_string(i) +
                             " is below 5; raise the trial count");
    }
    const double d = static_cast<double>(observed[i]) - expected[i];
    result.statistic += d * d / expected[i];
  }
  result.degrees_of_freedom = observed.size() - 1;
  result.p_value = boost::math::gamma_q(
      static_cast<double>(result.degrees_of_freedom) / 2.0,
      result.statistic / 2.0);
  return result;
}

ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> observed) {
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  const std::vector<double> expected(
      observed.size(),
      observed.empty() ? 0.0 : total / static_cast<double>(observed.size()));
  return chi_square(observed, expected);
}

std::uint64_t permutation_rank(const Permutation& p) {
  const std::size_t n = p.degree();
  if (n > 20) throw TooLarge("permutation_rank: degree above 20");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p[j] < p[i]) ++smaller;
    }
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::kDpfa: return "dpfa";
    case Engine::kDatapath: return "datapath";
    case Engine::kFisherYatesDesc: return "fy-desc";
    case Engine::kFisherYatesAsc: return "fy-asc";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::kDpfa, Engine::kDatapath, Engine::kFisherYatesDesc,
                   Engine::kFisherYatesAsc}) {
    if (name == engine_name(e)) return e;
  }
  throw InvalidArgument("unknown engine '" + std::string(name) +
                        "' (dpfa, datapath, fy-desc, fy-asc)");
}

ShuffleEngine::ShuffleEngine(Engine engine, std::size_t n)
    : kind_(engine), degree_(n) {
  check_engine_degree(engine, n);
  if (engine == Engine::kDpfa) sampler_.emplace(DpfaSampler::symmetric_group(n));
  if (engine == Engine::kDatapath) rom_.emplace(build_rom(n));
}

SwapTrace ShuffleEngine::shuffle(std::span<Index> items,
                                 RandomSource& rng) const {
  if (items.size() != degree_) {
    throw InvalidArgument("array length " + std::to_string(items.size()) +
                          " does not match n = " + std::to_string(degree_));
  }
  switch (kind_) {
    case Engine::kDpfa: return sampler_->shuffle_in_place(items, rng);
    case Engine::kDatapath: return simulate_datapath(*rom_, rng, items);
    case Engine::kFisherYatesDesc: return fisher_yates_desc(items, rng);
    case Engine::kFisherYatesAsc: return fisher_yates_asc(items, rng);
  }
  return {};
}

std::pair<Permutation, SwapTrace> ShuffleEngine::sample(
    RandomSource& rng) const {
  std::vector<Index> items(degree_);
  std::iota(items.begin(), items.end(), Index{0});
  SwapTrace trace = shuffle(std::span<Index>(items), rng);
  return {Permutation(std::move(items)), std::move(trace)};
}

DistributionReport empirical_distribution(Engine engine, std::size_t n,
                                          std::uint64_t trials,
                                          std::uint64_t seed) {
  if (n > 10) throw TooLarge("empirical_distribution: n above 10");
  const ShuffleEngine shuffler(engine, n);
  RngStream rng(seed);

  std::unordered_map<Permutation, std::uint64_t> seen;
  for (std::uint64_t t = 0; t < trials; ++t) ++seen[shuffler.sample(rng).first];

  DistributionReport report;
  report.mode = DistributionReport::Mode::kEmpirical;
  report.degree = n;
  report.trials = trials;
  report.counts.insert(seen.begin(), seen.end());
  report.group_size = report.counts.size();

  const double total = factorial(static_cast<unsigned>(n)).get_d();
  const double uniform = 1.0 / total;
  double worst = report.counts.size() < total ? uniform : 0.0;
  if (trials > 0) {
    for (const auto& [perm, c] : report.counts) {
      worst = std::max(worst, std::abs(static_cast<double>(c) /
                                           static_cast<double>(trials) -
                                       uniform));
    }
  }
  report.max_deviation_empirical = worst;
  return report;
}

std::vector<std::uint64_t> counts_by_rank(const DistributionReport& report) {
  if (report.degree > 10) throw TooLarge("counts_by_rank: degree above 10");
  std::vector<std::uint64_t> out(
      factorial(static_cast<unsigned>(report.degree)).get_ui(), 0);
  for (const auto& [perm, c] : report.counts) out[permutation_rank(perm)] += c;
  return out;
}

std::vector<std::vector<std::uint64_t>> position_counts(Engine engine,
                                                        std::size_t n,
                                                        std::uint64_t trials,
                                                        std::uint64_t seed) {
  const ShuffleEngine shuffler(engine, n);
  RngStream rng(seed);
  std::vector<std::vector<std::uint64_t>> table(
      n, std::vector<std::uint64_t>(n, 0));
  std::vector<Index> items(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::iota(items.begin(), items.end(), Index{0});
    shuffler.shuffle(std::span<Index>(items), rng);
    for (std::size_t pos = 0; pos < n; ++pos) ++table[pos][items[pos]];
  }
  return table;
}

std::vector<ChiSquareResult> positional_uniformity(
    const std::vector<std::vector<std::uint64_t>>& table) {
  std::vector<ChiSquareResult> out;
  out.reserve(table.size());
  for (const auto& row : table) out.push_back(chi_square_uniformity(row));
  return out;
}

Rational rounds_decrease_exact(unsigned n) {
  if (n < 2) throw InvalidArgument("rounds_decrease: n must be >= 2");
  Rational r = (harmonic(n) - 1) / Rational(n - 1) * 100;
  r.canonicalize();
  return r;
}

Rational speedup_exact(unsigned n) {
  if (n < 2) throw InvalidArgument("speedup: n must be >= 2");
  const Rational h = harmonic(n);
  Rational r = (h - 1) / (Rational(n) - h) * 100;
  r.canonicalize();
  return r;
}

double rounds_decrease_pct(unsigned n) {
  return rounds_decrease_exact(n).get_d();
}

double speedup_pct(unsigned n) { return speedup_exact(n).get_d(); }

unsigned threshold_boundary(Metric metric, const Rational& threshold,
                            unsigned n_max) {
  Rational h(3, 2);  // H_2
  unsigned boundary = 1;
  for (unsigned m = 2; m <= n_max; ++m) {
    if (m > 2) {
      h += Rational(1, m);
      h.canonicalize();
    }
    Rational value = metric == Metric::kRoundsDecrease
                         ? Rational((h - 1) / Rational(m - 1) * 100)
                         : Rational((h - 1) / (Rational(m) - h) * 100);
    value.canonicalize();
    if (value < threshold) break;
    boundary = m;
  }
  return boundary;
}

double RoundSummary::standard_error() const {
  return trials == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(trials));
}

RoundSummary run_rounds(Engine engine, std::size_t n, std::uint64_t trials,
                        std::uint64_t seed) {
  const ShuffleEngine shuffler(engine, n);
  RngStream rng(seed);
  RoundSummary summary;
  std::vector<Index> items(n);
  // Round counts are small integers, so the sums are exact.
  std::uint64_t sum = 0;
  long double sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::iota(items.begin(), items.end(), Index{0});
    const std::size_t rounds =
        shuffler.shuffle(std::span<Index>(items), rng).rounds;
    if (t == 0) {
      summary.min_rounds = summary.max_rounds = rounds;
    } else {
      summary.min_rounds = std::min(summary.min_rounds, rounds);
      summary.max_rounds = std::max(summary.max_rounds, rounds);
    }
    sum += rounds;
    sum_sq += static_cast<long double>(rounds) * rounds;
  }
  summary.trials = trials;
  if (trials > 0) {
    const long double mean =
        static_cast<long double>(sum) / static_cast<long double>(trials);
    summary.mean = static_cast<double>(mean);
    if (trials > 1) {
      summary.variance = static_cast<double>(
          (sum_sq - mean * static_cast<long double>(sum)) /
          static_cast<long double>(trials - 1));
    }
  }
  return summary;
}

Rational expected_rounds(Engine engine, unsigned n) {
  if (n == 0) throw InvalidArgument("expected_rounds: n must be >= 1");
  if (engine == Engine::kDpfa || engine == Engine::kDatapath) {
    return expected_swaps(n);
  }
  return Rational(n - 1);
}

BenchReport swap_count_bench(Engine engine, unsigned n, std::uint64_t trials,
                             std::uint64_t seed) {
  const RoundSummary summary = run_rounds(engine, n, trials, seed);
  BenchReport report;
  report.n = n;
  report.engine = engine_name(engine);
  report.trials = trials;
  report.mean_rounds = summary.mean;
  report.expected_rounds = expected_rounds(engine, n).get_d();
  if (n >= 2) {
    report.rounds_decrease_pct = rounds_decrease_pct(n);
    report.speedup_pct = speedup_pct(n);
  }
  return report;
}

std::string emit_report(std::span<const BenchReport> reports,
                        ReportFormat format) {
  if (format == ReportFormat::kJson) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      nlohmann::ordered_json row;
      row["n"] = r.n;
      row["engine"] = r.engine;
      row["trials"] = r.trials;
      row["mean_rounds"] = r.mean_rounds;
      row["expected"] = r.expected_rounds;
      row["decrease_pct"] = r.rounds_decrease_pct;
      row["speedup_pct"] = r.speedup_pct;
      rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
  }
  std::string out =
      "n,engine,trials,mean_rounds,expected,decrease_pct,speedup_pct\n";
  for (const auto& r : reports) {
    out += std::to_string(r.n) + ',' + r.engine + ',' +
           std::to_string(r.trials) + ',' + format_real(r.mean_rounds) + ',' +
           format_real(r.expected_rounds) + ',' +
           format_real(r.rounds_decrease_pct) + ',' +
           format_real(r.speedup_pct) + '\n';
  }
  return out;
}

std::vector<BenchReport> parse_bench_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("bench CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,engine,trials,mean_rounds,expected,decrease_pct,speedup_pct") {
    throw ParseError("unexpected bench CSV header '" + line + "'");
  }

  auto to_u64 = [](const std::string& s) {
    char* end = nullptr;
    const auto v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || s[0] == '-') {
      throw ParseError("bad integer '" + s + "'");
    }
    return static_cast<std::uint64_t>(v);
  };
  auto to_real = [](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw ParseError("bad number '" + s + "'");
    return v;
  };

  std::vector<BenchReport> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 7) {
      throw ParseError("bench CSV row has " + std::to_string(fields.size()) +
                       " fields, expected 7");
    }
    BenchReport r;
    r.n = static_cast<unsigned>(to_u64(fields[0]));
    r.engine = fields[1];
    r.trials = to_u64(fields[2]);
    r.mean_rounds = to_real(fields[3]);
    r.expected_rounds = to_real(fields[4]);
    r.rounds_decrease_pct = to_real(fields[5]);
    r.speedup_pct = to_real(fields[6]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string emit_report(const DistributionReport& report, ReportFormat format) {
  const bool exact = report.mode == DistributionReport::Mode::kExact;
  auto images = [](const Permutation& p) {
    return std::vector<Index>(p.mapping().begin(), p.mapping().end());
  };

  if (format == ReportFormat::kJson) {
    nlohmann::ordered_json doc;
    doc["mode"] = exact ? "exact" : "empirical";
    doc["degree"] = report.degree;
    doc["group_size"] = report.group_size;
    auto entries = nlohmann::ordered_json::array();
    if (exact) {
      doc["total_mass"] = rational_string(report.total_mass);
      doc["max_deviation"] = rational_string(report.max_deviation);
      for (const auto& [perm, p] : report.probabilities) {
        entries.push_back({{"perm", images(perm)},
                           {"probability", rational_string(p)}});
      }
    } else {
      doc["trials"] = report.trials;
      doc["max_deviation"] = report.max_deviation_empirical;
      for (const auto& [perm, c] : report.counts) {
        entries.push_back({{"perm", images(perm)}, {"count", c}});
      }
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
  }

  auto perm_field = [](const Permutation& p) {
    std::string s;
    for (Index i = 0; i < p.degree(); ++i) {
      if (i) s += ' ';
      s += std::to_string(p[i]);
    }
    return s;
  };
  std::string out = exact ? "perm,probability\n" : "perm,count\n";
  if (exact) {
    for (const auto& [perm, p] : report.probabilities) {
      out += perm_field(perm) + ',' + rational_string(p) + '\n';
    }
  } else {
    for (const auto& [perm, c] : report.counts) {
      out += perm_field(perm) + ',' + std::to_string(c) + '\n';
    }
  }
  return out;
}

}  // namespace permpfa
