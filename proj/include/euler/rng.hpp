#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "euler/types.hpp"

namespace euler {

// Deterministic RNG.  mt19937_64 has a standardized sequence and the uniform
// mapping below is explicit, so identical seeds give identical streams on
// every platform (std::uniform_real_distribution would not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Log-uniform on [a, b], 0 < a < b.
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  std::uint64_t next_u64() { return eng_(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (hi - lo + 1.0));
  }

  double angle() { return uniform(0.0, kTwoPi); }

  // Uniform w.r.t. area on the disc of radius rmax.
  Complex in_disc(double rmax) {
    double r = rmax * std::sqrt(uniform());
    return std::polar(r, angle());
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace euler
