#include "permpfa/sampler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace permpfa {

namespace {

Transposition label_to_transposition(const std::string& label,
                                     std::size_t degree) {
  const auto p = Permutation::parse(label, degree);
  std::vector<Index> moved;
  for (Index i = 0; i < p.degree(); ++i) {
    if (p[i] != i) moved.push_back(i);
  }
  if (moved.size() != 2) {
    throw InvalidArgument("symbol '" + label + "' is not a transposition");
  }
  return Transposition{moved[0], moved[1]};
}

}  // namespace

Permutation trace_permutation(const SwapTrace& trace, std::size_t degree) {
  std::vector<Index> items(degree);
  std::iota(items.begin(), items.end(), Index{0});
  apply_swaps(std::span<Index>(items), trace);
  return Permutation(std::move(items));
}

DpfaSampler::DpfaSampler(Dpfa dpfa, std::size_t degree)
    : dpfa_(std::move(dpfa)), degree_(degree) {
  if (degree_ == 0) throw InvalidArgument("sampler degree must be >= 1");
  for (const auto& label : dpfa_.dfa().alphabet()) {
    actions_.push_back(label_to_transposition(label, degree_));
  }

  const auto& counts = dpfa_.counts();
  narrow_ = mpz_fits_ulong_p(dpfa_.language_size().get_mpz_t()) != 0;
  if (narrow_) {
    for (const auto& pi : counts.counts) narrow_pi_.push_back(pi.get_ui());
    for (StateId s = 0; s < dpfa_.dfa().state_count(); ++s) {
      for (const auto& c : dpfa_.cumulative(s)) {
        narrow_cumulative_.push_back(c.get_ui());
      }
    }
  }
}

DpfaSampler DpfaSampler::symmetric_group(std::size_t n) {
  return DpfaSampler(assign_probabilities(build_sn_dfa(n)), n);
}

SwapTrace DpfaSampler::sample_trace(RandomSource& rng) const {
  const FiniteDfa& dfa = dpfa_.dfa();
  SwapTrace trace;
  StateId state = dfa.initial();
  for (;;) {
    const auto edges = dfa.outgoing(state);
    const std::size_t base = dpfa_.first_transition(state);
    std::size_t chosen = edges.size();
    if (narrow_) {
      const std::uint64_t r = rng.uniform(narrow_pi_[state]);
      const auto first = narrow_cumulative_.begin() +
                         static_cast<std::ptrdiff_t>(base);
      const auto last = first + static_cast<std::ptrdiff_t>(edges.size());
      chosen = static_cast<std::size_t>(std::lower_bound(first, last, r) - first);
    } else {
      const BigInt r = rng.uniform(dpfa_.counts()[state]);
      const auto cumulative = dpfa_.cumulative(state);
      chosen = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), r) -
          cumulative.begin());
    }
    if (chosen == edges.size()) break;  // halting region
    const Transition& edge = edges[chosen];
    const Transposition t = actions_[edge.symbol];
    trace.swaps.push_back({t.lo, t.hi});
    state = edge.to;
  }
  trace.rounds = trace.swaps.size();
  trace.halted_in_state = state;
  return trace;
}

std::pair<Permutation, SwapTrace> DpfaSampler::sample_permutation(
    RandomSource& rng) const {
  SwapTrace trace = sample_trace(rng);
  Permutation perm = trace_permutation(trace, degree_);
  return {std::move(perm), std::move(trace)};
}

Rational expected_swaps(unsigned n) {
  if (n == 0) throw InvalidArgument("expected_swaps: n must be >= 1");
  Rational result = Rational(n) - harmonic(n);
  result.canonicalize();
  return result;
}

std::string trace_json_line(const Permutation& perm, const SwapTrace& trace) {
  nlohmann::ordered_json line;
  line["perm"] = std::vector<Index>(perm.mapping().begin(), perm.mapping().end());
  auto swaps = nlohmann::json::array();
  for (const auto& s : trace.swaps) swaps.push_back({s.first, s.second});
  line["swaps"] = std::move(swaps);
  line["rounds"] = trace.rounds;
  return line.dump();
}

}  // namespace permpfa
