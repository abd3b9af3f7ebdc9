#pragma once

#include <cstdint>

#include "qic/matrix.hpp"

namespace qic {

// SplitMix64 (Steele, Lea, Flood). Tiny, counter-like and trivially
// reproducible in any language: state += 0x9E3779B97F4A7C15, then a fixed
// xor-shift-multiply finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller; the sine branch is cached so two
  // consecutive draws consume two uniforms.
  double gaussian();
  // (g0 + i g1) / sqrt(2), so E|z|^2 = 1.
  cplx complex_gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Independent stream seed for trial `index` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qic
