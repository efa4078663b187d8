#pragma once

// Reference implementations used to check the library. They share no code
// with permpfa beyond the GMP integer type.

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Perm = std::vector<int>;  // p[i] = image of i
using Word = std::vector<int>;  // symbol indices

Perm identity(int n);
Perm compose(const Perm& p, const Perm& q);  // p after q
Perm transposition(int n, int a, int b);
std::vector<Perm> all_perms(int n);
int cycle_count(const Perm& p);

// Composes gens[w0] o gens[w1] o ... (rightmost acts first).
Perm evaluate(const std::vector<Perm>& gens, const Word& w, int n);

// Transpositions of degree n listed by (hi, lo); element k is {lo, hi}.
std::vector<std::pair<int, int>> transposition_list(int n);

// Calls f for every word of length exactly k over m symbols, in
// lexicographic order.
void for_each_word(int m, int k, const std::function<void(const Word&)>& f);

// Shortest word length for every reachable element, by BFS on raw vectors.
std::map<Perm, int> shortest_lengths(const std::vector<Perm>& gens, int n);

// Shortest word length of one target by iterative deepening; -1 if none up
// to max_depth.
int iddfs_length(const std::vector<Perm>& gens, const Perm& target, int n,
                 int max_depth);

// Lexicographically least word of minimum length reaching target, by
// exhaustive search over all words of that length.
Word least_shortest_word(const std::vector<Perm>& gens, const Perm& target,
                         int n);

// Number of distinct nonempty residual languages u^-1 L, u ranging over all
// prefixes; equals the state count of the trimmed minimal DFA.
std::size_t residual_count(const std::set<Word>& language);

// n! * (a+1)! / (hi+1)! summed over valid columns, from the closed form of
// the path counts.
std::vector<std::vector<mpz_class>> rom_closed_form(int n);

mpz_class factorial(int n);
// H_n as (sum of n!/i) / n!.
mpq_class harmonic(int n);

// log(x) with 50 decimal digits, returned as a decimal string.
std::string log_string(const mpz_class& x);
long double log_hp(const mpz_class& x);

}  // namespace oracle
