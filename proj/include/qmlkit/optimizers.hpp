/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qmlkit/gradients.hpp"

namespace qmlkit {

using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

enum class OptimizerKind { GradientDescent, Adam, Spsa };

std::string_view to_string(OptimizerKind kind);
std::optional<OptimizerKind> optimizer_kind_from_string(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  std::size_t max_iterations = 1000;
  double learning_rate = 0.01;

  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  /// Gain numerator; calibrated from the objective when absent.
  std::optional<double> spsa_a;
  double spsa_c = 0.1;
  /// Stability constant; max_iterations / 10 when absent.
  std::optional<double> spsa_A;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  std::size_t spsa_resamples = 1;
  /// Target size of the first SPSA step when calibrating `a`.
  double spsa_target_step = 0.1;
  std::size_t spsa_calibration_steps = 10;

  /// Step of the central-difference gradient used when GD/ADAM get no gradient.
  double fd_step = 1e-5;

  /// Stop once the best value moved less than this for 5 iterations in a row.
  double tolerance = 1e-12;
  std::uint64_t seed = 0;

  void validate() const;
};

struct OptimizeResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  /// Objective at the initial point, then after every iteration.
  std::vector<double> history;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;

  /// Running minimum of `history`.
  std::vector<double> best_so_far() const;
};

/**
 * Minimizes `objective` from `initial`.
 *
 * GD and ADAM use `gradient` when given, central differences otherwise. SPSA
 * perturbs all coordinates at once with gains a_k = a / (k + 1 + A)^alpha and
 * c_k = c / (k + 1)^gamma. A non-finite objective value ends the run with
 * `converged == false` and the history gathered so far. Deterministic in
 * `config.seed`.
 */
OptimizeResult minimize(const Objective &objective, const GradientFn &gradient,
                        std::vector<double> initial, const OptimizerConfig &config);

} // namespace qmlkit
