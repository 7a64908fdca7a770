/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

namespace qmlkit {

/**
 * Seedable, splittable random stream.
 *
 * Wraps `std::mt19937_64`. Child streams are derived from `(seed, stream index)`
 * through `std::seed_seq`, so a task's randomness depends only on its index and
 * never on the order in which tasks run. Uniform and normal draws are computed
 * here rather than through `<random>` distributions, whose output is
 * implementation-defined.
 */
class Rng {
public:
  explicit Rng(std::uint64_t seed) : Rng(Words{}, {seed}) {}

  /// Independent stream for task `stream` under master `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(Words{}, {seed, stream});
  }

  /// Two-level derivation, e.g. (seed, kernel entry, observable term).
  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    return Rng(Words{}, {seed, stream, substream});
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = engine_();
    while (r >= limit) {
      r = engine_();
    }
    return r % n;
  }

  /// +1 or -1 with equal probability.
  int rademacher() { return (engine_() >> 63) != 0 ? 1 : -1; }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  struct Words {};

  Rng(Words, std::initializer_list<std::uint64_t> words) {
    // The word count is mixed in so (s) and (s, 0) give different streams.
    std::vector<std::uint32_t> halves{static_cast<std::uint32_t>(words.size())};
    for (auto w : words) {
      halves.push_back(static_cast<std::uint32_t>(w));
      halves.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq seq(halves.begin(), halves.end());
    engine_.seed(seq);
  }

  std::mt19937_64 engine_;
};

} // namespace qmlkit
