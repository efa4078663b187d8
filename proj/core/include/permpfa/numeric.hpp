#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace permpfa {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned n);

// H_n = 1 + 1/2 + ... + 1/n, exact.
Rational harmonic(unsigned n);

// Natural logarithm of a positive integer, evaluated in long double from the
// top 64 significant bits.
long double log_big(const BigInt& x);

// Number of bits needed to store x (x >= 0); 0 for x == 0.
std::size_t bit_length(const BigInt& x);

// "p/q" even when q == 1.
std::string rational_string(const Rational& q);

Rational parse_rational(const std::string& text);

}  // namespace permpfa
