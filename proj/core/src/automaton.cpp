#include "permpfa/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <tuple>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "permpfa/errors.hpp"
#include "permpfa/permutation.hpp"

namespace permpfa {

namespace {

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

// Depth-first post-order over the useful states reachable from the initial
// state. Throws CyclicLanguage on a back edge.
std::vector<StateId> useful_post_order(const FiniteDfa& dfa,
                                       const std::vector<bool>& useful) {
  std::vector<StateId> order;
  if (dfa.state_count() == 0 || !useful[dfa.initial()]) return order;

  enum class Mark : std::uint8_t { kNew, kActive, kDone };
  std::vector<Mark> mark(dfa.state_count(), Mark::kNew);
  struct Frame {
    StateId state;
    std::size_t next_edge;
  };
  std::vector<Frame> stack{{dfa.initial(), 0}};
  mark[dfa.initial()] = Mark::kActive;
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto edges = dfa.outgoing(top.state);
    if (top.next_edge == edges.size()) {
      mark[top.state] = Mark::kDone;
      order.push_back(top.state);
      stack.pop_back();
      continue;
    }
    const StateId to = edges[top.next_edge++].to;
    if (!useful[to]) continue;
    if (mark[to] == Mark::kActive) {
      throw CyclicLanguage("cycle through state " + std::to_string(to) +
                           ": the accepted language is infinite");
    }
    if (mark[to] == Mark::kNew) {
      mark[to] = Mark::kActive;
      stack.push_back({to, 0});
    }
  }
  return order;
}

StateId parse_state(std::string_view token, std::size_t line_no) {
  StateId value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("dfa line " + std::to_string(line_no) +
                     ": expected a state id, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    out.push_back(s.substr(start, end == std::string::npos ? std::string::npos
                                                           : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

FiniteDfa::FiniteDfa(std::size_t state_count, StateId initial,
                     std::vector<StateId> finals,
                     std::vector<Transition> transitions,
                     std::vector<std::string> alphabet)
    : initial_(initial),
      final_(state_count, false),
      transitions_(std::move(transitions)),
      alphabet_(std::move(alphabet)) {
  if (state_count == 0) throw InvalidArgument("a DFA needs at least one state");
  if (initial_ >= state_count) {
    throw InvalidArgument("initial state out of range");
  }
  for (StateId f : finals) {
    if (f >= state_count) throw InvalidArgument("final state out of range");
    final_[f] = true;
  }
  std::unordered_set<std::string> seen_labels;
  for (const auto& label : alphabet_) {
    if (!valid_label(label)) {
      throw InvalidArgument("alphabet labels must be non-empty and free of "
                            "whitespace");
    }
    if (!seen_labels.insert(label).second) {
      throw InvalidArgument("duplicate alphabet label '" + label + "'");
    }
  }
  for (const auto& t : transitions_) {
    if (t.from >= state_count || t.to >= state_count) {
      throw InvalidArgument("transition state out of range");
    }
    if (t.symbol >= alphabet_.size()) {
      throw InvalidArgument("transition symbol out of range");
    }
  }
  std::sort(transitions_.begin(), transitions_.end(),
            [](const Transition& a, const Transition& b) {
              return std::tie(a.from, a.symbol) < std::tie(b.from, b.symbol);
            });
  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    if (transitions_[i].from == transitions_[i - 1].from &&
        transitions_[i].symbol == transitions_[i - 1].symbol) {
      throw InvalidArgument("nondeterministic: state " +
                            std::to_string(transitions_[i].from) +
                            " has two edges on '" +
                            alphabet_[transitions_[i].symbol] + "'");
    }
  }
  offsets_.assign(state_count + 1, 0);
  for (const auto& t : transitions_) ++offsets_[t.from + 1];
  for (std::size_t s = 0; s < state_count; ++s) offsets_[s + 1] += offsets_[s];
}

std::vector<StateId> FiniteDfa::finals() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < final_.size(); ++s) {
    if (final_[s]) out.push_back(s);
  }
  return out;
}

std::span<const Transition> FiniteDfa::outgoing(StateId s) const {
  return std::span<const Transition>(transitions_)
      .subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
}

std::optional<StateId> FiniteDfa::step(StateId s, SymbolId symbol) const {
  auto edges = outgoing(s);
  auto it = std::lower_bound(
      edges.begin(), edges.end(), symbol,
      [](const Transition& t, SymbolId sym) { return t.symbol < sym; });
  if (it == edges.end() || it->symbol != symbol) return std::nullopt;
  return it->to;
}

bool FiniteDfa::accepts(std::span<const SymbolId> word) const {
  if (state_count() == 0) return false;
  StateId s = initial_;
  for (SymbolId sym : word) {
    auto next = step(s, sym);
    if (!next) return false;
    s = *next;
  }
  return is_final(s);
}

FiniteDfa build_sn_dfa(std::size_t n) {
  if (n == 0) throw InvalidArgument("build_sn_dfa: n must be >= 1");
  const auto alphabet = transposition_alphabet(n);
  std::vector<std::string> labels;
  labels.reserve(alphabet.size());
  for (const auto& t : alphabet) labels.push_back(t.to_string());

  std::vector<Transition> transitions;
  for (StateId state = 0; state < n; ++state) {
    for (SymbolId sym = 0; sym < alphabet.size(); ++sym) {
      if (alphabet[sym].hi > state) {
        transitions.push_back({state, sym, alphabet[sym].hi});
      }
    }
  }
  std::vector<StateId> finals(n);
  for (StateId s = 0; s < n; ++s) finals[s] = s;
  return FiniteDfa(n, 0, std::move(finals), std::move(transitions),
                   std::move(labels));
}

std::vector<bool> useful_states(const FiniteDfa& dfa) {
  const std::size_t n = dfa.state_count();
  std::vector<bool> reachable(n, false), coreachable(n, false);
  if (n == 0) return reachable;

  std::deque<StateId> queue{dfa.initial()};
  reachable[dfa.initial()] = true;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const auto& t : dfa.outgoing(s)) {
      if (!reachable[t.to]) {
        reachable[t.to] = true;
        queue.push_back(t.to);
      }
    }
  }

  std::vector<std::vector<StateId>> reverse(n);
  for (const auto& t : dfa.transitions()) reverse[t.to].push_back(t.from);
  for (StateId s = 0; s < n; ++s) {
    if (dfa.is_final(s)) {
      coreachable[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (StateId p : reverse[s]) {
      if (!coreachable[p]) {
        coreachable[p] = true;
        queue.push_back(p);
      }
    }
  }

  std::vector<bool> useful(n);
  for (std::size_t s = 0; s < n; ++s) useful[s] = reachable[s] && coreachable[s];
  return useful;
}

PathCountTable count_paths(const FiniteDfa& dfa) {
  const auto useful = useful_states(dfa);
  PathCountTable table;
  table.counts.assign(dfa.state_count(), BigInt(0));
  for (StateId s : useful_post_order(dfa, useful)) {
    BigInt pi = dfa.is_final(s) ? 1 : 0;
    for (const auto& t : dfa.outgoing(s)) {
      if (useful[t.to]) pi += table.counts[t.to];
    }
    table.counts[s] = std::move(pi);
  }
  return table;
}

std::span<const BigInt> Dpfa::cumulative(StateId s) const {
  const auto begin = first_transition(s);
  return std::span<const BigInt>(cumulative_)
      .subspan(begin, dfa_.outgoing(s).size());
}

std::size_t Dpfa::first_transition(StateId s) const {
  auto edges = dfa_.outgoing(s);
  if (edges.empty()) return 0;
  return static_cast<std::size_t>(edges.data() - dfa_.transitions().data());
}

Dpfa assign_probabilities(const FiniteDfa& dfa) {
  const auto useful = useful_states(dfa);
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    if (!useful[s]) {
      throw UselessState("state " + std::to_string(s) +
                         " is useless; apply remove_useless first");
    }
  }
  Dpfa out;
  out.counts_ = count_paths(dfa);
  out.dfa_ = dfa;

  const auto transitions = dfa.transitions();
  out.transition_prob_.reserve(transitions.size());
  out.cumulative_.reserve(transitions.size());
  for (const auto& t : transitions) {
    Rational p(out.counts_[t.to], out.counts_[t.from]);
    p.canonicalize();
    out.transition_prob_.push_back(std::move(p));
  }
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    BigInt running = 0;
    for (const auto& t : dfa.outgoing(s)) {
      running += out.counts_[t.to];
      out.cumulative_.push_back(running);
    }
    Rational halt(dfa.is_final(s) ? 1 : 0, out.counts_[s]);
    halt.canonicalize();
    out.halt_prob_.push_back(std::move(halt));
  }
  return out;
}

FiniteDfa remove_useless(const FiniteDfa& dfa) {
  const auto useful = useful_states(dfa);
  if (!useful[dfa.initial()]) {
    throw EmptyLanguage("the DFA accepts no word");
  }
  std::vector<StateId> renumber(dfa.state_count(), 0);
  StateId next = 0;
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    if (useful[s]) renumber[s] = next++;
  }
  std::vector<StateId> finals;
  for (StateId s : dfa.finals()) {
    if (useful[s]) finals.push_back(renumber[s]);
  }
  std::vector<Transition> transitions;
  for (const auto& t : dfa.transitions()) {
    if (useful[t.from] && useful[t.to]) {
      transitions.push_back({renumber[t.from], t.symbol, renumber[t.to]});
    }
  }
  return FiniteDfa(next, renumber[dfa.initial()], std::move(finals),
                   std::move(transitions), dfa.alphabet());
}

FiniteDfa minimize(const FiniteDfa& input) {
  const FiniteDfa dfa = remove_useless(input);
  const std::size_t n = dfa.state_count();

  // Moore refinement. Missing edges go to the elided trap, which differs
  // from every useful state, so "no edge" is its own signature entry.
  std::vector<std::size_t> block(n);
  for (StateId s = 0; s < n; ++s) block[s] = dfa.is_final(s) ? 1 : 0;
  std::size_t block_count = 0;
  for (;;) {
    using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < n; ++s) {
      Signature sig{block[s], {}};
      for (const auto& t : dfa.outgoing(s)) {
        sig.second.push_back(t.symbol);
        sig.second.push_back(block[t.to]);
      }
      auto [it, inserted] = ids.try_emplace(std::move(sig), ids.size());
      next[s] = it->second;
    }
    const bool stable = ids.size() == block_count;
    block_count = ids.size();
    block = std::move(next);
    if (stable) break;
  }

  // Renumber blocks breadth-first from the initial state.
  constexpr auto kUnset = static_cast<StateId>(-1);
  std::vector<StateId> block_id(block_count, kUnset);
  std::vector<StateId> representative;
  std::deque<StateId> queue{dfa.initial()};
  block_id[block[dfa.initial()]] = 0;
  representative.push_back(dfa.initial());
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const auto& t : dfa.outgoing(s)) {
      if (block_id[block[t.to]] == kUnset) {
        block_id[block[t.to]] = static_cast<StateId>(representative.size());
        representative.push_back(t.to);
        queue.push_back(t.to);
      }
    }
  }

  std::vector<StateId> finals;
  std::vector<Transition> transitions;
  for (StateId id = 0; id < representative.size(); ++id) {
    const StateId s = representative[id];
    if (dfa.is_final(s)) finals.push_back(id);
    for (const auto& t : dfa.outgoing(s)) {
      transitions.push_back({id, t.symbol, block_id[block[t.to]]});
    }
  }
  return FiniteDfa(representative.size(), 0, std::move(finals),
                   std::move(transitions), dfa.alphabet());
}

std::strong_ordering compare_symbol_words(std::span<const SymbolId> a,
                                          std::span<const SymbolId> b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<SymbolWord> enumerate_language(const FiniteDfa& dfa,
                                           std::size_t max_count) {
  const auto counts = count_paths(dfa);
  const BigInt& total = counts[dfa.initial()];
  if (total > BigInt(std::to_string(max_count))) {
    throw TooLarge("language has " + total.get_str() + " words, limit is " +
                   std::to_string(max_count));
  }
  std::vector<SymbolWord> words;
  words.reserve(total.get_ui());
  if (sgn(total) == 0) return words;

  SymbolWord prefix;
  struct Frame {
    StateId state;
    std::size_t next_edge;
  };
  std::vector<Frame> stack{{dfa.initial(), 0}};
  if (dfa.is_final(dfa.initial())) words.push_back(prefix);
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto edges = dfa.outgoing(top.state);
    if (top.next_edge == edges.size()) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    const auto& t = edges[top.next_edge++];
    if (sgn(counts[t.to]) == 0) continue;
    prefix.push_back(t.symbol);
    if (dfa.is_final(t.to)) words.push_back(prefix);
    stack.push_back({t.to, 0});
  }
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    return compare_symbol_words(a, b) < 0;
  });
  return words;
}

FiniteDfa dfa_from_words(std::span<const SymbolWord> words,
                         std::vector<std::string> alphabet) {
  std::vector<Transition> transitions;
  std::vector<StateId> finals;
  std::map<std::pair<StateId, SymbolId>, StateId> edges;
  StateId next = 1;
  for (const auto& word : words) {
    StateId s = 0;
    for (SymbolId sym : word) {
      auto [it, inserted] = edges.try_emplace({s, sym}, next);
      if (inserted) {
        transitions.push_back({s, sym, next});
        ++next;
      }
      s = it->second;
    }
    finals.push_back(s);
  }
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  return FiniteDfa(next, 0, std::move(finals), std::move(transitions),
                   std::move(alphabet));
}

void write_dfa_text(std::ostream& out, const FiniteDfa& dfa) {
  out << "states " << dfa.state_count() << " initial " << dfa.initial()
      << " finals ";
  const auto finals = dfa.finals();
  if (finals.empty()) out << '-';
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (i) out << ',';
    out << finals[i];
  }
  out << "\nalphabet";
  for (const auto& label : dfa.alphabet()) out << ' ' << label;
  out << '\n';
  for (const auto& t : dfa.transitions()) {
    out << t.from << ' ' << dfa.alphabet()[t.symbol] << ' ' << t.to << '\n';
  }
}

std::string write_dfa_text(const FiniteDfa& dfa) {
  std::ostringstream out;
  write_dfa_text(out, dfa);
  return out.str();
}

FiniteDfa read_dfa_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_alphabet = false;
  std::size_t state_count = 0;
  StateId initial = 0;
  std::vector<StateId> finals;
  std::vector<std::string> alphabet;
  std::unordered_map<std::string, SymbolId> symbol_of;
  std::vector<Transition> transitions;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].starts_with('#')) continue;
    if (!have_header) {
      if (tokens.size() != 6 || tokens[0] != "states" ||
          tokens[2] != "initial" || tokens[4] != "finals") {
        throw ParseError("dfa line " + std::to_string(line_no) +
                         ": expected 'states N initial I finals i,j,...'");
      }
      state_count = parse_state(tokens[1], line_no);
      initial = parse_state(tokens[3], line_no);
      if (tokens[5] != "-") {
        for (const auto& f : split_commas(tokens[5])) {
          finals.push_back(parse_state(f, line_no));
        }
      }
      have_header = true;
      continue;
    }
    if (tokens[0] == "alphabet" && !have_alphabet && transitions.empty()) {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!symbol_of.try_emplace(tokens[i], alphabet.size()).second) {
          throw ParseError("dfa line " + std::to_string(line_no) +
                           ": duplicate label '" + tokens[i] + "'");
        }
        alphabet.push_back(tokens[i]);
      }
      have_alphabet = true;
      continue;
    }
    if (tokens.size() != 3) {
      throw ParseError("dfa line " + std::to_string(line_no) +
                       ": expected 'from symbol to'");
    }
    auto it = symbol_of.find(tokens[1]);
    if (it == symbol_of.end()) {
      if (have_alphabet) {
        throw ParseError("dfa line " + std::to_string(line_no) +
                         ": symbol '" + tokens[1] + "' not in alphabet");
      }
      it = symbol_of.emplace(tokens[1], alphabet.size()).first;
      alphabet.push_back(tokens[1]);
    }
    transitions.push_back({parse_state(tokens[0], line_no), it->second,
                           parse_state(tokens[2], line_no)});
  }
  if (!have_header) throw ParseError("dfa text: missing header line");
  try {
    return FiniteDfa(state_count, initial, std::move(finals),
                     std::move(transitions), std::move(alphabet));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("dfa text: ") + e.what());
  }
}

}  // namespace permpfa
