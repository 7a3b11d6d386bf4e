#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "su6/state.hpp"

namespace su6 {

/// Seeded generator whose output depends only on the seed: the raw
/// mt19937_64 stream is converted by hand because the standard
/// distributions differ between library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }

  /// Standard normal by Box-Muller.
  double normal() {
    const double u = 1.0 - uniform(); // (0, 1]
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  /// Haar-random pure state.
  CoherentState state() {
    Vector6c a;
    for (int i = 0; i < 6; ++i) a(i) = Complex(normal(), normal());
    return CoherentState(a);
  }

  /// Uniform unit vector in R^n.
  std::vector<double> direction(std::size_t n) {
    std::vector<double> d(n);
    double norm2 = 0.0;
    for (auto& x : d) {
      x = normal();
      norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : d) x *= inv;
    return d;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace su6
