#pragma once

#include <cstdint>
#include <random>

#include "permpfa/numeric.hpp"

namespace permpfa {

/// Source of uniform integers on an inclusive range [1, m]. Implementations
/// must return independent, exactly uniform draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform on [1, m]; m >= 1.
  virtual std::uint64_t uniform(std::uint64_t m) = 0;

  /// Uniform on [1, m]; m >= 1. The default draws 64-bit chunks from
  /// uniform() and rejects values >= m.
  virtual BigInt uniform(const BigInt& m);
};

/// Seedable deterministic generator (mt19937_64) with rejection sampling.
class RngStream final : public RandomSource {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Seeded from std::random_device.
  static RngStream from_entropy();

  std::uint64_t uniform(std::uint64_t m) override;
  using RandomSource::uniform;

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace permpfa
