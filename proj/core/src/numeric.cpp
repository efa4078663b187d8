#include "permpfa/numeric.hpp"

#include <cmath>
#include <numbers>

#include "permpfa/errors.hpp"

namespace permpfa {

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rational harmonic(unsigned n) {
  Rational sum = 0;
  for (unsigned i = 1; i <= n; ++i) sum += Rational(1, i);
  sum.canonicalize();
  return sum;
}

std::size_t bit_length(const BigInt& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

long double log_big(const BigInt& x) {
  if (sgn(x) <= 0) throw InvalidArgument("log_big: argument must be positive");
  const std::size_t bits = bit_length(x);
  if (bits <= 64) {
    BigInt top = x;
    return std::log(static_cast<long double>(mpz_get_ui(top.get_mpz_t())));
  }
  const std::size_t shift = bits - 64;
  BigInt top = x >> shift;
  const auto mantissa = static_cast<long double>(mpz_get_ui(top.get_mpz_t()));
  return std::log(mantissa) +
         static_cast<long double>(shift) * std::numbers::ln2_v<long double>;
}

std::string rational_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw ParseError("bad rational: " + text);
  if (sgn(q.get_den()) == 0) throw ParseError("zero denominator: " + text);
  q.canonicalize();
  return q;
}

}  // namespace permpfa
