#include <gtest/gtest.h>

#include <cmath>
#include "json.hpp"

#include "permpfa/errors.hpp"
#include "permpfa/stats.hpp"
#include "support/oracles.hpp"

using namespace permpfa;

TEST(ExactDistribution, SmallDegrees) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto report = exact_distribution(assign_probabilities(build_sn_dfa(n)), n);
    EXPECT_EQ(report.mode, DistributionReport::Mode::kExact);
    EXPECT_EQ(report.group_size, factorial(n).get_ui());
    EXPECT_EQ(report.total_mass, 1);
    EXPECT_EQ(report.max_deviation, 0);
    for (const auto& [perm, p] : report.probabilities) {
      EXPECT_EQ(p, Rational(BigInt(1), factorial(n)));
    }
  }
  EXPECT_THROW(exact_distribution(assign_probabilities(build_sn_dfa(5)), 5, 100), TooLarge);
}

TEST(ExactDistribution, WordProbabilities) {
  const auto words = exact_word_probabilities(assign_probabilities(build_sn_dfa(3)));
  ASSERT_EQ(words.size(), 6u);
  Rational total = 0;
  for (const auto& [w, p] : words) {
    EXPECT_EQ(p, Rational(1, 6));
    total += p;
  }
  EXPECT_EQ(total, 1);
}

TEST(ExactDistribution, NonUniformDeviation) {
  // Only (1,2) and the empty word: each 1/2, against a group of size 2.
  const FiniteDfa dfa(2, 0, {0, 1}, {{0, 0, 1}}, {"(1,2)"});
  const auto report = exact_distribution(assign_probabilities(dfa), 3);
  EXPECT_EQ(report.group_size, 2u);
  EXPECT_EQ(report.max_deviation, 0);
}

TEST(ChiSquare, Basics) {
  const std::vector<std::uint64_t> flat(10, 100);
  const auto r = chi_square_uniformity(flat);
  EXPECT_EQ(r.statistic, 0);
  EXPECT_EQ(r.degrees_of_freedom, 9u);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);

  std::vector<std::uint64_t> lumped(10, 0);
  lumped[0] = 1000;
  EXPECT_LT(chi_square_uniformity(lumped).p_value, 1e-100);

  const std::vector<std::uint64_t> thin(10, 4);
  EXPECT_THROW(chi_square_uniformity(thin), UnderpoweredTest);
  const std::vector<std::uint64_t> one{50};
  EXPECT_THROW(chi_square_uniformity(one), InvalidArgument);
}

TEST(ChiSquare, KnownValue) {
  // 4 on one degree of freedom: p = erfc(sqrt 2).
  const std::vector<std::uint64_t> obs{60, 40};
  const std::vector<double> exp{50, 50};
  const auto r = chi_square(obs, exp);
  EXPECT_DOUBLE_EQ(r.statistic, 4.0);
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(2.0)), 1e-12);
}

TEST(PermutationRank, Lexicographic) {
  const auto perms = oracle::all_perms(4);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const Permutation p(std::vector<Index>(perms[i].begin(), perms[i].end()));
    EXPECT_EQ(permutation_rank(p), i);
  }
}

TEST(Engines, Names) {
  for (auto e : {Engine::kDpfa, Engine::kDatapath, Engine::kFisherYatesDesc,
                 Engine::kFisherYatesAsc}) {
    EXPECT_EQ(parse_engine(engine_name(e)), e);
  }
  EXPECT_EQ(engine_name(Engine::kFisherYatesDesc), "fy-desc");
  EXPECT_THROW(parse_engine("bogo"), InvalidArgument);
  EXPECT_THROW(ShuffleEngine(Engine::kDpfa, 0), InvalidArgument);
  EXPECT_THROW(ShuffleEngine(Engine::kDatapath, 1), InvalidArgument);
}

TEST(Engines, EmpiricalCountsCoverTheGroup) {
  for (auto e : {Engine::kDpfa, Engine::kDatapath, Engine::kFisherYatesDesc,
                 Engine::kFisherYatesAsc}) {
    const auto report = empirical_distribution(e, 4, 24000, 11);
    EXPECT_EQ(report.trials, 24000u);
    const auto counts = counts_by_rank(report);
    ASSERT_EQ(counts.size(), 24u);
    EXPECT_GT(chi_square_uniformity(counts).p_value, 1e-4) << engine_name(e);
    const auto table = position_counts(e, 6, 6000, 3);
    for (const auto& r : positional_uniformity(table)) EXPECT_GT(r.p_value, 1e-4);
  }
}

TEST(Percentages, SmallValues) {
  EXPECT_EQ(rounds_decrease_exact(2), 50);
  EXPECT_EQ(speedup_exact(2), 100);
  EXPECT_DOUBLE_EQ(rounds_decrease_pct(2), 50.0);
  EXPECT_THROW(speedup_exact(1), InvalidArgument);
  // n = 3: H = 11/6, decrease (5/6)/2, speedup (5/6)/(7/6).
  EXPECT_EQ(rounds_decrease_exact(3), Rational(125, 3));
  EXPECT_EQ(speedup_exact(3), Rational(500, 7));
}

TEST(Percentages, MonotoneAndOrdered) {
  double prev_d = 101, prev_s = 1e9;
  for (unsigned n = 2; n <= 1000; ++n) {
    const double d = rounds_decrease_pct(n), s = speedup_pct(n);
    EXPECT_LT(d, prev_d);
    EXPECT_LT(s, prev_s);
    EXPECT_GE(s, d);
    prev_d = d;
    prev_s = s;
  }
  const Rational h32 = oracle::harmonic(32);
  EXPECT_EQ(speedup_exact(32), (h32 - 1) / (32 - h32) * 100);
  EXPECT_LT(speedup_pct(32), 10.95);
  EXPECT_NEAR(speedup_pct(32), 10.9461, 5e-5);
}

TEST(Percentages, ThresholdBoundaries) {
  EXPECT_EQ(threshold_boundary(Metric::kRoundsDecrease, 5, 2000), 80u);
  EXPECT_EQ(threshold_boundary(Metric::kSpeedup, 5, 2000), 85u);
  EXPECT_EQ(threshold_boundary(Metric::kSpeedup, 1, 2000), 605u);
  EXPECT_EQ(threshold_boundary(Metric::kSpeedup, Rational(1095, 100), 2000), 31u);
  EXPECT_EQ(threshold_boundary(Metric::kSpeedup, 101, 2000), 1u);
  EXPECT_EQ(threshold_boundary(Metric::kSpeedup, 1, 100), 100u);
  // Brute force against the oracle harmonic numbers.
  unsigned brute = 1;
  for (unsigned n = 2; n <= 100; ++n) {
    const Rational h = oracle::harmonic(static_cast<int>(n));
    if ((h - 1) / (n - 1) * 100 < 5) break;
    brute = n;
  }
  EXPECT_EQ(brute, 80u);
}

TEST(Rounds, FisherYatesIsDeterministicInCount) {
  for (auto e : {Engine::kFisherYatesDesc, Engine::kFisherYatesAsc}) {
    const auto s = run_rounds(e, 17, 500, 1);
    EXPECT_EQ(s.mean, 16.0);
    EXPECT_EQ(s.variance, 0.0);
    EXPECT_EQ(s.min_rounds, 16u);
    EXPECT_EQ(s.max_rounds, 16u);
  }
  const auto one = run_rounds(Engine::kDpfa, 1, 100, 1);
  EXPECT_EQ(one.mean, 0.0);
}

TEST(Rounds, DpfaMeanWithinStandardErrors) {
  for (auto e : {Engine::kDpfa, Engine::kDatapath}) {
    const auto s = run_rounds(e, 50, 20000, 99);
    const double expected = expected_rounds(e, 50).get_d();
    EXPECT_NEAR(s.mean, expected, 4 * s.standard_error()) << engine_name(e);
    EXPECT_LE(s.max_rounds, 49u);
  }
  EXPECT_EQ(expected_rounds(Engine::kDpfa, 4), 4 - oracle::harmonic(4));
  EXPECT_EQ(expected_rounds(Engine::kFisherYatesAsc, 4), 3);
}

TEST(BenchReport, CsvRoundTripAndJson) {
  std::vector<BenchReport> reports;
  reports.push_back(swap_count_bench(Engine::kDpfa, 1, 10, 1));
  reports.push_back(swap_count_bench(Engine::kDpfa, 12, 1000, 2));
  reports.push_back(swap_count_bench(Engine::kFisherYatesDesc, 12, 1000, 3));
  EXPECT_EQ(reports[0].speedup_pct, 0.0);
  EXPECT_EQ(reports[2].mean_rounds, 11.0);
  EXPECT_DOUBLE_EQ(reports[1].speedup_pct, speedup_pct(12));

  const std::string csv = emit_report(reports, ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "n,engine,trials,mean_rounds,expected,decrease_pct,speedup_pct");
  EXPECT_EQ(parse_bench_csv(csv), reports);
  EXPECT_THROW(parse_bench_csv("n,engine\n"), ParseError);
  EXPECT_THROW(parse_bench_csv(csv + "1,dpfa,3\n"), ParseError);

  const auto json = nlohmann::json::parse(emit_report(reports, ReportFormat::kJson));
  ASSERT_EQ(json.size(), 3u);
  EXPECT_EQ(json[1]["engine"], "dpfa");
  EXPECT_EQ(json[1]["n"], 12);
}

TEST(DistributionReportText, ExactJsonAndCsv) {
  const auto report = exact_distribution(assign_probabilities(build_sn_dfa(3)), 3);
  const auto json = nlohmann::json::parse(emit_report(report, ReportFormat::kJson));
  EXPECT_EQ(json["mode"], "exact");
  EXPECT_EQ(json["group_size"], 6);
  EXPECT_EQ(json["total_mass"], "1/1");
  ASSERT_EQ(json["entries"].size(), 6u);
  for (const auto& e : json["entries"]) EXPECT_EQ(e["probability"], "1/6");
  const std::string csv = emit_report(report, ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "perm,probability");
  EXPECT_NE(csv.find("0 1 2,1/6\n"), std::string::npos);

  const auto emp = empirical_distribution(Engine::kDpfa, 3, 600, 5);
  const auto ej = nlohmann::json::parse(emit_report(emp, ReportFormat::kJson));
  EXPECT_EQ(ej["mode"], "empirical");
  EXPECT_EQ(ej["trials"], 600);
  std::uint64_t total = 0;
  for (const auto& e : ej["entries"]) total += e["count"].get<std::uint64_t>();
  EXPECT_EQ(total, 600u);
}
