#include "permpfa/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "permpfa/automaton.hpp"
#include "permpfa/errors.hpp"
#include "permpfa/genset.hpp"
#include "permpfa/romgen.hpp"
#include "permpfa/sampler.hpp"
#include "permpfa/stats.hpp"

namespace permpfa::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RngStream make_rng(const std::optional<std::uint64_t>& seed) {
  return seed ? RngStream(*seed) : RngStream::from_entropy();
}

std::string read_file(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

// Writes to --out when given, else to `out`.
void deliver(const std::string& text, const std::string& path,
             std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw InvalidArgument("cannot write '" + path + "'");
  }
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const unsigned n = static_cast<unsigned>(std::stoul(text));
      return {n, n};
    }
    std::size_t used = 0;
    const auto lo = std::stoul(text.substr(0, dots), &used);
    if (used != dots) throw UsageError("");
    const std::string rest = text.substr(dots + 2);
    const auto hi = std::stoul(rest, &used);
    if (used != rest.size()) throw UsageError("");
    if (lo < 1 || hi < lo) throw UsageError("");
    return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
  } catch (const std::exception&) {
    throw UsageError("--n-range expects A..B with 1 <= A <= B, got '" + text +
                     "'");
  }
}

long double parse_real(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long double v = std::stold(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + " expects a number, got '" + text + "'");
}

long double parse_base(const std::string& text) {
  if (text == "e") return std::numbers::e_v<long double>;
  const long double b = parse_real(text, "--base");
  if (b <= 1) throw UsageError("--base must be > 1");
  return b;
}

std::string real_string(long double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

// ---- subcommands ----------------------------------------------------------

struct BuildDfaArgs {
  std::size_t n = 0;
  bool minimize = false;
  std::string out_path;
};

void cmd_build_dfa(const BuildDfaArgs& a, std::ostream& out) {
  FiniteDfa dfa = build_sn_dfa(a.n);
  if (a.minimize) dfa = minimize(dfa);
  deliver(write_dfa_text(dfa), a.out_path, out);
}

struct SampleArgs {
  std::size_t n = 0;
  std::uint64_t count = 1;
  std::string mode = "walk";
  std::optional<std::uint64_t> seed;
};

void cmd_sample(const SampleArgs& a, std::ostream& out) {
  RngStream rng = make_rng(a.seed);
  if (a.mode == "datapath") {
    const RomTable rom = build_rom(a.n);
    for (std::uint64_t i = 0; i < a.count; ++i) {
      const SwapTrace trace = simulate_datapath(rom, rng);
      out << trace_json_line(trace_permutation(trace, a.n), trace) << '\n';
    }
    return;
  }
  const auto sampler = DpfaSampler::symmetric_group(a.n);
  for (std::uint64_t i = 0; i < a.count; ++i) {
    const auto [perm, trace] = sampler.sample_permutation(rng);
    out << trace_json_line(perm, trace) << '\n';
  }
}

struct ShuffleArgs {
  std::string mode = "walk";
  std::optional<std::uint64_t> seed;
};

void cmd_shuffle(const ShuffleArgs& a, std::istream& in, std::ostream& out) {
  std::vector<std::string> items{std::istream_iterator<std::string>(in), {}};
  if (items.size() > 1) {
    RngStream rng = make_rng(a.seed);
    const ShuffleEngine engine(
        a.mode == "datapath" ? Engine::kDatapath : Engine::kDpfa, items.size());
    std::vector<Index> order(items.size());
    std::iota(order.begin(), order.end(), Index{0});
    engine.shuffle(std::span<Index>(order), rng);
    std::vector<std::string> shuffled;
    shuffled.reserve(items.size());
    for (Index i : order) shuffled.push_back(std::move(items[i]));
    items = std::move(shuffled);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ' ';
    out << items[i];
  }
  out << '\n';
}

struct EmitRomArgs {
  std::size_t n = 0;
  std::string format = "csv";
  std::string out_path;
};

void cmd_emit_rom(const EmitRomArgs& a, std::ostream& out) {
  const RomTable rom = build_rom(a.n);
  deliver(emit_rom_file(rom, a.format == "hex" ? RomFormat::kHexMeminit
                                              : RomFormat::kDecimalCsv),
          a.out_path, out);
}

struct VerifyArgs {
  std::size_t n = 0;
  bool exact = false;
  bool chi2 = false;
  std::uint64_t trials = 100000;
  std::string mode = "walk";
  std::string dfa_path;
  std::string format = "text";
  double alpha = 0.001;
  std::optional<std::uint64_t> seed;
};

bool verify_exact(const VerifyArgs& a, std::istream& in, std::ostream& out) {
  DistributionReport report;
  std::string source = "M_n";
  if (!a.dfa_path.empty()) {
    if (a.mode == "datapath") {
      throw UsageError("--dfa cannot be combined with --mode datapath");
    }
    const FiniteDfa dfa = read_dfa_text(read_file(a.dfa_path, in));
    report = exact_distribution(assign_probabilities(remove_useless(dfa)), a.n);
    source = a.dfa_path;
  } else if (a.mode == "datapath") {
    report = exact_datapath_distribution(build_rom(a.n));
    source = "rom";
  } else {
    report = exact_distribution(assign_probabilities(build_sn_dfa(a.n)), a.n);
  }

  const bool uniform = report.total_mass == 1 && sgn(report.max_deviation) == 0;
  const bool full = a.dfa_path.empty()
                        ? BigInt(static_cast<unsigned long>(report.group_size)) ==
                              factorial(static_cast<unsigned>(a.n))
                        : true;
  if (a.format == "json") {
    out << emit_report(report, ReportFormat::kJson);
  } else {
    out << "mode exact\n"
        << "source " << source << '\n'
        << "n " << a.n << '\n'
        << "group_size " << report.group_size << '\n'
        << "total_mass " << rational_string(report.total_mass) << '\n'
        << "max_deviation " << rational_string(report.max_deviation) << '\n'
        << "result " << (uniform && full ? "uniform" : "not-uniform") << '\n';
  }
  return uniform && full;
}

bool verify_chi2(const VerifyArgs& a, std::ostream& out) {
  if (!a.dfa_path.empty()) {
    throw UsageError("--chi2 runs the built-in engines; drop --dfa");
  }
  const Engine engine = a.mode == "datapath" ? Engine::kDatapath : Engine::kDpfa;
  const std::uint64_t seed =
      a.seed ? *a.seed : RngStream::from_entropy().next_u64();

  nlohmann::ordered_json doc;
  doc["mode"] = "chi2";
  doc["n"] = a.n;
  doc["engine"] = engine_name(engine);
  doc["trials"] = a.trials;
  doc["seed"] = seed;
  bool pass = false;
  if (a.n <= 6) {
    const auto report = empirical_distribution(engine, a.n, a.trials, seed);
    const auto result = chi_square_uniformity(counts_by_rank(report));
    pass = result.p_value > a.alpha;
    doc["test"] = "full";
    doc["statistic"] = result.statistic;
    doc["dof"] = result.degrees_of_freedom;
    doc["p_value"] = result.p_value;
  } else {
    const auto results =
        positional_uniformity(position_counts(engine, a.n, a.trials, seed));
    double min_p = 1;
    for (const auto& r : results) min_p = std::min(min_p, r.p_value);
    pass = min_p > a.alpha;
    doc["test"] = "positional";
    doc["positions"] = results.size();
    doc["min_p_value"] = min_p;
  }
  doc["alpha"] = a.alpha;
  doc["result"] = pass ? "pass" : "fail";

  if (a.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : doc.items()) {
      out << key << ' '
          << (value.is_string() ? value.get<std::string>() : value.dump())
          << '\n';
    }
  }
  return pass;
}

struct BenchArgs {
  std::string engines = "dpfa,fy-desc,fy-asc";
  std::string n_range;
  std::uint64_t trials = 10000;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<Engine> engines;
  std::istringstream list(a.engines);
  for (std::string name; std::getline(list, name, ',');) {
    try {
      engines.push_back(parse_engine(name));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  if (engines.empty()) throw UsageError("--engines is empty");
  const auto [lo, hi] = parse_range(a.n_range);

  // Every (engine, n) cell gets its own stream derived from the one seed.
  RngStream master = make_rng(a.seed);
  std::vector<BenchReport> reports;
  for (unsigned n = lo; n <= hi; ++n) {
    for (Engine e : engines) {
      const std::uint64_t cell_seed = master.next_u64();
      if (e == Engine::kDatapath && n < 2) continue;
      reports.push_back(swap_count_bench(e, n, a.trials, cell_seed));
    }
  }
  out << emit_report(reports, a.format == "json" ? ReportFormat::kJson
                                                  : ReportFormat::kCsv);
}

struct BoundsArgs {
  unsigned n = 0;
  std::string target_length;
  std::string base = "e";
  std::optional<std::uint64_t> gamma;
  std::string format = "text";
};

void cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const long double base = parse_base(a.base);
  const long double target = a.target_length == "auto-sqrt-ln"
                                 ? sqrt_log_target(a.n, std::numbers::e_v<long double>)
                                 : parse_real(a.target_length, "--target-length");
  const std::uint64_t exact = min_gamma_exact(a.n, target);
  const std::uint64_t gamma = a.gamma.value_or(exact);
  if (gamma < 2) throw UsageError("--gamma must be >= 2");
  const BoundReport r = compute_bounds(a.n, gamma, target, base);

  nlohmann::ordered_json doc;
  doc["n"] = r.n;
  doc["target_length"] = static_cast<double>(r.target_length);
  doc["base"] = static_cast<double>(r.base);
  doc["exact_min_gamma"] = r.exact_min_gamma;
  doc["asymptotic_min_gamma"] = static_cast<double>(r.asymptotic_min_gamma);
  doc["gamma"] = r.gamma;
  doc["l_max_lower_bound"] = static_cast<double>(r.l_max_lower_bound);
  doc["l_max_asymptotic"] = static_cast<double>(r.l_max_asymptotic);
  if (a.n >= 2) {
    doc["appendix_inequality"] = verify_appendix_inequality(a.n, gamma);
  }

  if (a.format == "json") {
    out << doc.dump(2) << '\n';
    return;
  }
  out << "n " << r.n << '\n'
      << "target_length " << real_string(r.target_length) << '\n'
      << "base " << real_string(r.base) << '\n'
      << "exact_min_gamma " << r.exact_min_gamma << '\n'
      << "asymptotic_min_gamma " << real_string(r.asymptotic_min_gamma) << '\n'
      << "gamma " << r.gamma << '\n'
      << "l_max_lower_bound " << real_string(r.l_max_lower_bound) << '\n'
      << "l_max_asymptotic " << real_string(r.l_max_asymptotic) << '\n';
  if (a.n >= 2) {
    out << "appendix_inequality "
        << (verify_appendix_inequality(a.n, gamma) ? "true" : "false") << '\n';
  }
}

struct GensetArgs {
  std::string file;
  std::optional<std::size_t> n;
  bool emit_dfa = false;
  bool bounds = false;
  std::size_t limit = 1'000'000;
};

void cmd_genset(const GensetArgs& a, std::istream& in, std::ostream& out) {
  const GeneratingSet gens = GeneratingSet::parse(read_file(a.file, in), a.n);
  const CanonicalTable table = bfs_canonical(gens, a.limit);
  const FiniteDfa dfa = build_genset_dfa(table, gens);
  if (a.emit_dfa) {
    write_dfa_text(out, dfa);
    return;
  }
  out << "degree " << gens.degree() << '\n'
      << "generators " << gens.size() << '\n'
      << "group_size " << table.group_size() << '\n'
      << "full_group " << (table.generates_full_group ? "true" : "false")
      << '\n'
      << "l_max " << table.l_max << '\n'
      << "dfa_states " << dfa.state_count() << '\n';
  if (a.bounds && gens.degree() >= 2 && gens.size() >= 2) {
    const auto n = static_cast<unsigned>(gens.degree());
    out << "l_max_lower_bound " << real_string(l_max_lower_bound(n, gens.size()))
        << '\n'
        << "l_max_asymptotic "
        << real_string(l_max_asymptotic_bound(n, gens.size())) << '\n'
        << "satisfies_length_bound "
        << (satisfies_length_bound(n, gens.size(), table.l_max) ? "true"
                                                                 : "false")
        << '\n';
  }
}

}  // namespace

int run(int argc, const char* const argv[], std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform random permutations from the minimal DFA of S_n",
               "permpfa"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::vector<std::string> modes{"walk", "datapath"};
  const auto degree_check = CLI::Range(std::size_t{1}, std::size_t{1} << 20);

  BuildDfaArgs build_dfa;
  auto* c_build = app.add_subcommand("build-dfa", "Print the M_n DFA as text");
  c_build->add_option("--n", build_dfa.n, "Degree n")->required()->check(degree_check);
  c_build->add_flag("--minimize", build_dfa.minimize, "Minimize before printing");
  c_build->add_option("--out", build_dfa.out_path, "Output file (default stdout)");

  SampleArgs sample;
  auto* c_sample = app.add_subcommand(
      "sample", "Draw permutations; one JSON line {perm,swaps,rounds} each");
  c_sample->add_option("--n", sample.n, "Degree n")->required()->check(degree_check);
  c_sample->add_option("--count", sample.count, "Number of samples")
      ->capture_default_str();
  c_sample->add_option("--mode", sample.mode, "walk or datapath")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  c_sample->add_option("--seed", sample.seed, "RNG seed (default: entropy)");

  ShuffleArgs shuffle;
  auto* c_shuffle = app.add_subcommand(
      "shuffle", "Shuffle whitespace-separated items from stdin onto one line");
  c_shuffle->add_option("--mode", shuffle.mode, "walk or datapath")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  c_shuffle->add_option("--seed", shuffle.seed, "RNG seed (default: entropy)");

  EmitRomArgs emit_rom;
  auto* c_rom = app.add_subcommand("emit-rom", "Write the cumulative ROM image");
  c_rom->add_option("--n", emit_rom.n, "Degree n (>= 2)")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 16));
  c_rom->add_option("--format", emit_rom.format,
                    "csv (decimal rows) or hex (fixed-width, $readmemh)")
      ->check(CLI::IsMember({"csv", "hex"}))
      ->capture_default_str();
  c_rom->add_option("--out", emit_rom.out_path, "Output file (default stdout)");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand(
      "verify", "Check uniformity exactly or with a chi-square test");
  c_verify->add_option("--n", verify.n, "Degree n")->required()->check(degree_check);
  auto* o_exact = c_verify->add_flag(
      "--exact", verify.exact, "Enumerate every path with rational arithmetic");
  auto* o_chi2 = c_verify->add_flag(
      "--chi2", verify.chi2,
      "Sample and test (full table for n <= 6, per position above)");
  o_exact->excludes(o_chi2);
  c_verify->add_option("--trials", verify.trials, "Samples for --chi2")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_verify->add_option("--alpha", verify.alpha, "Pass threshold on the p-value")
      ->capture_default_str();
  c_verify->add_option("--mode", verify.mode, "walk or datapath")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  c_verify->add_option("--dfa", verify.dfa_path,
                       "DFA text file whose labels are permutations of n");
  c_verify->add_option("--format", verify.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  c_verify->add_option("--seed", verify.seed, "RNG seed (default: entropy)");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Mean swap rounds per engine");
  c_bench->add_option("--engines", bench.engines,
                      "Comma list of dpfa, datapath, fy-desc, fy-asc")
      ->capture_default_str();
  c_bench->add_option("--n-range", bench.n_range, "A..B (or a single n)")
      ->required();
  c_bench->add_option("--trials", bench.trials, "Shuffles per (engine, n)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_bench->add_option("--seed", bench.seed, "RNG seed (default: entropy)");
  c_bench->add_option("--format", bench.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand(
      "bounds", "Generating-set size and word-length bounds");
  c_bounds->add_option("--n", bounds.n, "Degree n (>= 2)")
      ->required()
      ->check(CLI::Range(2u, 100000u));
  c_bounds->add_option("--target-length", bounds.target_length,
                       "Target word length L, or auto-sqrt-ln for sqrt(n) ln n")
      ->required();
  c_bounds->add_option("--base", bounds.base,
                       "Logarithm base for the asymptotic bound (number or e)")
      ->capture_default_str();
  c_bounds->add_option("--gamma", bounds.gamma,
                       "Set size for the l_max bounds (default: exact minimum)");
  c_bounds->add_option("--format", bounds.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  GensetArgs genset;
  auto* c_genset = app.add_subcommand(
      "genset", "Canonical words and DFA for a generating set");
  c_genset->add_option("--file", genset.file,
                       "One permutation per line (cycle or one-line); - for stdin")
      ->required();
  c_genset->add_option("--n", genset.n, "Degree (default: inferred)")
      ->check(degree_check);
  c_genset->add_flag("--emit-dfa", genset.emit_dfa,
                     "Print the minimized DFA text instead of the summary");
  c_genset->add_flag("--bounds", genset.bounds,
                     "Also report the l_max bounds for gamma = set size");
  c_genset->add_option("--limit", genset.limit, "Largest group size to search")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "permpfa: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c_build->parsed()) {
      cmd_build_dfa(build_dfa, out);
    } else if (c_sample->parsed()) {
      cmd_sample(sample, out);
    } else if (c_shuffle->parsed()) {
      cmd_shuffle(shuffle, in, out);
    } else if (c_rom->parsed()) {
      cmd_emit_rom(emit_rom, out);
    } else if (c_verify->parsed()) {
      const bool use_chi2 =
          verify.chi2 || (!verify.exact && verify.dfa_path.empty() && verify.n > 6);
      const bool ok = use_chi2 ? verify_chi2(verify, out)
                               : verify_exact(verify, in, out);
      if (!ok) {
        err << "permpfa: verification failed for n = " << verify.n << '\n';
        return 1;
      }
    } else if (c_bench->parsed()) {
      cmd_bench(bench, out);
    } else if (c_bounds->parsed()) {
      cmd_bounds(bounds, out);
    } else if (c_genset->parsed()) {
      cmd_genset(genset, in, out);
    }
  } catch (const UsageError& e) {
    err << "permpfa: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "permpfa: " << e.what() << '\n';
    return 1;
  }
  out.flush();
  return 0;
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"permpfa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace permpfa::cli
