#include "permpfa/rng.hpp"

#include "permpfa/errors.hpp"

namespace permpfa {

BigInt RandomSource::uniform(const BigInt& m) {
  if (sgn(m) <= 0) throw InvalidArgument("uniform: range must be >= 1");
  if (mpz_fits_ulong_p(m.get_mpz_t())) {
    return BigInt(static_cast<unsigned long>(uniform(mpz_get_ui(m.get_mpz_t()))));
  }
  // Draw x uniform on [0, 2^bits) with bits = bit_length(m - 1), accept x < m.
  const BigInt limit = m - 1;
  const std::size_t bits = bit_length(limit);
  const std::size_t chunks = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (chunks - 1);
  for (;;) {
    BigInt x = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
      // Two exact 32-bit halves per 64-bit chunk.
      const std::uint64_t hi = uniform(std::uint64_t{1} << 32) - 1;
      const std::uint64_t lo = uniform(std::uint64_t{1} << 32) - 1;
      std::uint64_t chunk = (hi << 32) | lo;
      if (c == 0 && top_bits < 64) chunk &= (std::uint64_t{1} << top_bits) - 1;
      x <<= 64;
      x += BigInt(static_cast<unsigned long>(chunk));
    }
    if (x <= limit) return x + 1;
  }
}

RngStream RngStream::from_entropy() {
  std::random_device device;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(device()) << 32) | device();
  return RngStream(seed);
}

std::uint64_t RngStream::uniform(std::uint64_t m) {
  if (m == 0) throw InvalidArgument("uniform: range must be >= 1");
  // Accept x in [2^64 mod m, 2^64): that interval holds a multiple of m values.
  const std::uint64_t reject_below = (0 - m) % m;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= reject_below) return x % m + 1;
  }
}

}  // namespace permpfa
