#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rdyn/core.hpp"

namespace rdyn {

/// Fixed-algorithm generator so sampled seeds are identical across standard
/// libraries (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in the open disk of the given radius: r = sqrt(u) * radius.
  Complex in_disk(double radius) {
    const double r = std::sqrt(uniform()) * radius;
    const double theta = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, theta);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rdyn
