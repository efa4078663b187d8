#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm transposition(int n, int a, int b) {
  Perm p = identity(n);
  std::swap(p[a], p[b]);
  return p;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int cycle_count(const Perm& p) {
  std::vector<bool> seen(p.size());
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true;
  }
  return c;
}

Perm evaluate(const std::vector<Perm>& gens, const Word& w, int n) {
  Perm r = identity(n);
  for (int s : w) r = compose(r, gens[s]);
  return r;
}

std::vector<std::pair<int, int>> transposition_list(int n) {
  std::vector<std::pair<int, int>> out;
  for (int hi = 1; hi < n; ++hi) {
    for (int lo = 0; lo < hi; ++lo) out.emplace_back(lo, hi);
  }
  return out;
}

void for_each_word(int m, int k, const std::function<void(const Word&)>& f) {
  Word w(k, 0);
  if (m == 0) {
    if (k == 0) f(w);
    return;
  }
  for (;;) {
    f(w);
    int pos = k - 1;
    while (pos >= 0 && w[pos] == m - 1) w[pos--] = 0;
    if (pos < 0) return;
    ++w[pos];
  }
}

std::map<Perm, int> shortest_lengths(const std::vector<Perm>& gens, int n) {
  std::map<Perm, int> dist{{identity(n), 0}};
  std::deque<Perm> queue{identity(n)};
  while (!queue.empty()) {
    const Perm p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm q = compose(p, g);
      if (dist.emplace(q, dist[p] + 1).second) queue.push_back(std::move(q));
    }
  }
  return dist;
}

namespace {

bool dls(const std::vector<Perm>& gens, const Perm& current, const Perm& target,
         int depth) {
  if (current == target) return true;
  if (depth == 0) return false;
  for (const auto& g : gens) {
    if (dls(gens, compose(current, g), target, depth - 1)) return true;
  }
  return false;
}

}  // namespace

int iddfs_length(const std::vector<Perm>& gens, const Perm& target, int n,
                 int max_depth) {
  for (int d = 0; d <= max_depth; ++d) {
    if (dls(gens, identity(n), target, d)) return d;
  }
  return -1;
}

Word least_shortest_word(const std::vector<Perm>& gens, const Perm& target,
                         int n) {
  for (int k = 0;; ++k) {
    Word best;
    bool found = false;
    for_each_word(static_cast<int>(gens.size()), k, [&](const Word& w) {
      if (!found && evaluate(gens, w, n) == target) {
        best = w;
        found = true;
      }
    });
    if (found) return best;
  }
}

std::size_t residual_count(const std::set<Word>& language) {
  std::set<Word> prefixes;
  for (const auto& w : language) {
    for (std::size_t k = 0; k <= w.size(); ++k) {
      prefixes.insert(Word(w.begin(), w.begin() + static_cast<long>(k)));
    }
  }
  std::set<std::set<Word>> residuals;
  for (const auto& u : prefixes) {
    std::set<Word> r;
    for (const auto& w : language) {
      if (w.size() >= u.size() && std::equal(u.begin(), u.end(), w.begin())) {
        r.insert(Word(w.begin() + static_cast<long>(u.size()), w.end()));
      }
    }
    residuals.insert(std::move(r));
  }
  return residuals.size();
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

mpq_class harmonic(int n) {
  const mpz_class f = factorial(n);
  mpz_class sum = 0;
  for (int i = 1; i <= n; ++i) sum += f / i;
  mpq_class h(sum, f);
  h.canonicalize();
  return h;
}

std::vector<std::vector<mpz_class>> rom_closed_form(int n) {
  const mpz_class nf = factorial(n);
  std::vector<std::vector<mpz_class>> rows(n);
  for (int a = 0; a < n; ++a) {
    mpz_class running = 0;
    for (const auto& [lo, hi] : transposition_list(n)) {
      if (hi > a) running += nf * factorial(a + 1) / factorial(hi + 1);
      rows[a].push_back(running);
    }
  }
  return rows;
}

std::string log_string(const mpz_class& x) {
  using boost::multiprecision::cpp_bin_float_50;
  const cpp_bin_float_50 v(x.get_str());
  return log(v).str(50);
}

long double log_hp(const mpz_class& x) {
  using boost::multiprecision::cpp_bin_float_50;
  const cpp_bin_float_50 v(x.get_str());
  return static_cast<long double>(log(v));
}

}  // namespace oracle
