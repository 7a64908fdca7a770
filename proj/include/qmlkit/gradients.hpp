/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qmlkit/circuit.hpp"
#include "qmlkit/matrix.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

using Objective = std::function<double(std::span<const double>)>;

inline constexpr double kDefaultShift = std::numbers::pi / 2;

/// Inputs of a parameter-shift evaluation of f(theta) = <observable> at `values`.
struct GradientRequest {
  const Circuit &circuit;
  const PauliObservable &observable;
  std::span<const double> values;
  double shift = kDefaultShift;
  Execution exec;
};

/// One appearance of a parameter inside a rotation angle `coefficient * theta`.
struct ShiftOccurrence {
  std::size_t gate = 0;
  std::size_t parameter = 0;
  double coefficient = 1.0;
};

/**
 * Every occurrence of the parameters listed in `wrt` (all parameters when
 * empty), in gate order.
 *
 * Only RX/RY/RZ angles of the form `c * theta` with |c| = 1 qualify. Any other
 * use of a listed parameter (products, offsets, scaled coefficients,
 * controlled rotations) throws UnsupportedParameterError naming it.
 */
std::vector<ShiftOccurrence> shift_occurrences(const Circuit &circuit,
                                               std::span<const std::size_t> wrt = {});

/// Evaluates a bound circuit to a vector of outputs. `stream` identifies the
/// shifted evaluation so shot-mode callers can derive independent seeds.
using BoundEvaluator =
    std::function<std::vector<double>(const Circuit &bound, std::uint64_t stream)>;

/**
 * Jacobian of `evaluate` with respect to the parameters in `wrt` via the
 * parameter-shift rule: each occurrence is shifted by +/-s separately and the
 * contributions [f(+s) - f(-s)] / (2 sin s) are summed per parameter.
 *
 * Row r is the parameter `wrt[r]` (or r when `wrt` is empty); columns are the
 * evaluator's outputs, whose count is `outputs`.
 */
Matrix shift_jacobian(const Circuit &circuit, std::span<const double> values, double shift,
                      std::size_t outputs, const BoundEvaluator &evaluate,
                      std::span<const std::size_t> wrt = {});

/// Gradient of the estimator expectation, one entry per circuit parameter.
std::vector<double> param_shift_gradient(const GradientRequest &req);

struct SpsaGradientConfig {
  double perturbation = 0.01;
  std::size_t resamples = 1;
  std::uint64_t seed = 0;
};

/**
 * Simultaneous-perturbation estimate averaged over `resamples` Rademacher
 * directions. Resample r draws its direction from stream (seed, r) and costs
 * two evaluations of `f`.
 */
std::vector<double> spsa_gradient(const Objective &f, std::span<const double> values,
                                  const SpsaGradientConfig &config);

/// Central differences with step `step`.
std::vector<double> finite_difference(const Objective &f, std::span<const double> values,
                                      double step = 1e-5);

} // namespace qmlkit
