/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/fidelity.hpp"

#include <algorithm>

#include "qmlkit/error.hpp"

namespace qmlkit {

double compute_uncompute(const FidelityJob &job) {
  if (job.circuit_a.num_qubits() != job.circuit_b.num_qubits()) {
    throw ValidationError("fidelity between circuits of different widths (" +
                          std::to_string(job.circuit_a.num_qubits()) + " vs " +
                          std::to_string(job.circuit_b.num_qubits()) + ")");
  }
  const Circuit bound_a = bind(job.circuit_a, job.values_a);
  const Circuit bound_b = bind(job.circuit_b, job.values_b);
  if (job.exec.exact() && bound_a == bound_b) {
    return 1.0;
  }
  const Statevector state = run(compose(bound_a, inverse(bound_b)));
  if (job.exec.exact()) {
    return std::clamp(std::norm(state[0]), 0.0, 1.0);
  }
  return sample(state, job.exec).probability(0);
}

} // namespace qmlkit
