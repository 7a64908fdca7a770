/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmlkit/error.hpp"
#include "qmlkit/fidelity.hpp"
#include "support/dense_oracle.hpp"
#include "support/generators.hpp"

using namespace qmlkit;
using std::numbers::pi;

namespace {

Circuit ry_x() {
  Circuit c(1);
  c.ry(Parameter("x"), 0);
  return c;
}

double fid(const Circuit &a, const Circuit &b, const std::vector<double> &va,
           const std::vector<double> &vb, Execution exec = {}) {
  return compute_uncompute({a, b, va, vb, exec});
}

} // namespace

TEST_CASE("fidelity examples") {
  const auto c = ry_x();
  CHECK(fid(c, c, {0.7}, {0.7}) == 1.0);
  CHECK(std::abs(fid(c, c, {0.0}, {pi})) < 1e-12);
  CHECK(std::abs(fid(c, c, {0.0}, {pi / 2}) - 0.5) < 1e-12);
}

TEST_CASE("fidelity follows cos^2 of the half angle difference") {
  const auto c = ry_x();
  gen::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = gen::angle(rng), b = gen::angle(rng);
    CHECK(std::abs(fid(c, c, {a}, {b}) - std::pow(std::cos((a - b) / 2), 2)) < 1e-12);
  }
}

TEST_CASE("fidelity input checks") {
  const auto c = ry_x();
  CHECK_THROWS_AS(fid(c, Circuit(2), {0.1}, {}), ValidationError);
  CHECK_THROWS_AS(fid(c, c, {0.1}, {}), ValidationError);
}

TEST_CASE("clashing parameter names are bound separately") {
  const auto a = ry_x();
  const auto b = ry_x();
  CHECK(std::abs(fid(a, b, {0.0}, {pi})) < 1e-12);
}

TEST_CASE("fidelity matches the inner product oracle, is symmetric and in range") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const Circuit a = gen::constant_circuit(rng, n, 3 + rng.below(10));
    const Circuit b = gen::constant_circuit(rng, n, 3 + rng.below(10));
    const std::vector<double> none;
    const double ab = fid(a, b, none, none);
    const double ref = oracle::fidelity(oracle::state(b, none), oracle::state(a, none));
    CHECK(std::abs(ab - ref) < 1e-10);
    CHECK(std::abs(ab - fid(b, a, none, none)) < 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(fid(a, a, none, none) == 1.0);
  }
}

TEST_CASE("parameterized self-fidelity is exactly one") {
  gen::Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = gen::shift_friendly_circuit(rng, 4);
    const auto v = gen::uniform_values(rng, c.num_parameters());
    CHECK(fid(c, c, v, v) == 1.0);
  }
}

TEST_CASE("shot-mode fidelity") {
  const auto c = ry_x();
  const auto exec = Execution::sampled(4096, 5);
  const double f = fid(c, c, {0.0}, {pi / 2}, exec);
  CHECK(std::abs(f - 0.5) < 0.05);
  CHECK(f == fid(c, c, {0.0}, {pi / 2}, exec));
  CHECK(fid(c, c, {0.3}, {0.3}, exec) == 1.0);
  CHECK(fid(c, c, {0.0}, {pi}, exec) == 0.0);
  // A count over 4096 shots.
  CHECK(std::abs(f * 4096 - std::round(f * 4096)) < 1e-9);
}
