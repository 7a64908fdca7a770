/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <span>

#include "qmlkit/circuit.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

struct FidelityJob {
  const Circuit &circuit_a;
  const Circuit &circuit_b;
  std::span<const double> values_a;
  std::span<const double> values_b;
  Execution exec;
};

/**
 * Fidelity |<phi_b|phi_a>|^2 by compute-uncompute: prepare state a, apply the
 * inverse of preparation b, and read the probability of the all-zeros outcome.
 *
 * Both circuits are bound before composing, so their parameter names never
 * clash. In exact mode the result is clamped to [0, 1] and identical bound
 * preparations return exactly 1. In shot mode it is the raw all-zeros
 * frequency drawn with `exec.seed`.
 */
double compute_uncompute(const FidelityJob &job);

} // namespace qmlkit
