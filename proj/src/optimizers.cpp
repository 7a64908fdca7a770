/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "qmlkit/error.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

namespace {

constexpr std::size_t kStallWindow = 5;

// Streams under the optimizer seed.
constexpr std::uint64_t kCalibrationStream = 0xCA11B;
constexpr std::uint64_t kIterationStream = 0x17E4;

class Tracker {
public:
  Tracker(const Objective &objective, const OptimizerConfig &config, OptimizeResult &result)
      : objective_(objective), config_(config), result_(result) {}

  /// Counts and evaluates. Non-finite values are returned as-is.
  double evaluate(std::span<const double> x) {
    ++result_.evaluations;
    return objective_(x);
  }

  /// Records the value at a new iterate; returns false when the run must stop.
  bool record(std::span<const double> x, double value) {
    if (!std::isfinite(value)) {
      result_.converged = false;
      stopped_ = true;
      return false;
    }
    result_.history.push_back(value);
    const bool first = result_.history.size() == 1;
    const double previous_best = result_.best_value;
    if (first || value < result_.best_value) {
      result_.best_value = value;
      result_.best_point.assign(x.begin(), x.end());
    }
    if (!first) {
      stall_ = std::abs(previous_best - result_.best_value) < config_.tolerance ? stall_ + 1 : 0;
      if (stall_ >= kStallWindow) {
        result_.converged = true;
        stopped_ = true;
        return false;
      }
    }
    return true;
  }

  bool stopped() const { return stopped_; }

private:
  const Objective &objective_;
  const OptimizerConfig &config_;
  OptimizeResult &result_;
  std::size_t stall_ = 0;
  bool stopped_ = false;
};

std::vector<double> gradient_at(const GradientFn &gradient, std::span<const double> x,
                                const OptimizerConfig &config, Tracker &tracker) {
  if (gradient) {
    auto g = gradient(x);
    if (g.size() != x.size()) {
      throw ValidationError("gradient has " + std::to_string(g.size()) + " entries for " +
                            std::to_string(x.size()) + " parameters");
    }
    return g;
  }
  return finite_difference([&](std::span<const double> p) { return tracker.evaluate(p); }, x,
                           config.fd_step);
}

bool all_finite(const std::vector<double> &v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

} // namespace

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
  case OptimizerKind::GradientDescent:
    return "gd";
  case OptimizerKind::Adam:
    return "adam";
  case OptimizerKind::Spsa:
    return "spsa";
  }
  return "?";
}

std::optional<OptimizerKind> optimizer_kind_from_string(std::string_view name) {
  if (name == "gd") {
    return OptimizerKind::GradientDescent;
  }
  if (name == "adam") {
    return OptimizerKind::Adam;
  }
  if (name == "spsa") {
    return OptimizerKind::Spsa;
  }
  return std::nullopt;
}

void OptimizerConfig::validate() const {
  if (max_iterations < 1) {
    throw ValidationError("max_iterations must be at least 1");
  }
  if (!(learning_rate > 0.0)) {
    throw ValidationError("learning_rate must be positive");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw ValidationError("ADAM betas must lie in [0, 1)");
  }
  if (!(adam_epsilon > 0.0)) {
    throw ValidationError("adam_epsilon must be positive");
  }
  if (spsa_a && !(*spsa_a > 0.0)) {
    throw ValidationError("spsa_a must be positive");
  }
  if (!(spsa_c > 0.0)) {
    throw ValidationError("spsa_c must be positive");
  }
  if (spsa_A && !(*spsa_A >= 0.0)) {
    throw ValidationError("spsa_A must be non-negative");
  }
  if (spsa_resamples < 1) {
    throw ValidationError("spsa_resamples must be at least 1");
  }
  if (!(tolerance >= 0.0)) {
    throw ValidationError("tolerance must be non-negative");
  }
}

std::vector<double> OptimizeResult::best_so_far() const {
  std::vector<double> out(history.size());
  double best = history.empty() ? 0.0 : history.front();
  for (std::size_t i = 0; i < history.size(); ++i) {
    best = std::min(best, history[i]);
    out[i] = best;
  }
  return out;
}

OptimizeResult minimize(const Objective &objective, const GradientFn &gradient,
                        std::vector<double> initial, const OptimizerConfig &config) {
  config.validate();
  OptimizeResult result;
  Tracker tracker(objective, config, result);

  std::vector<double> x = std::move(initial);
  const double f0 = tracker.evaluate(x);
  if (!std::isfinite(f0)) {
    throw NonFiniteError("objective is not finite at the initial point");
  }
  tracker.record(x, f0);

  const std::size_t n = x.size();

  try {
    switch (config.kind) {
    case OptimizerKind::GradientDescent: {
      for (std::size_t k = 0; k < config.max_iterations && !tracker.stopped(); ++k) {
        const auto g = gradient_at(gradient, x, config, tracker);
        if (!all_finite(g)) {
          result.converged = false;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) {
          x[i] -= config.learning_rate * g[i];
        }
        ++result.iterations;
        tracker.record(x, tracker.evaluate(x));
      }
      break;
    }
    case OptimizerKind::Adam: {
      std::vector<double> m(n, 0.0), v(n, 0.0);
      double beta1_t = 1.0, beta2_t = 1.0;
      for (std::size_t k = 0; k < config.max_iterations && !tracker.stopped(); ++k) {
        const auto g = gradient_at(gradient, x, config, tracker);
        if (!all_finite(g)) {
          result.converged = false;
          break;
        }
        beta1_t *= config.adam_beta1;
        beta2_t *= config.adam_beta2;
        for (std::size_t i = 0; i < n; ++i) {
          m[i] = config.adam_beta1 * m[i] + (1.0 - config.adam_beta1) * g[i];
          v[i] = config.adam_beta2 * v[i] + (1.0 - config.adam_beta2) * g[i] * g[i];
          const double m_hat = m[i] / (1.0 - beta1_t);
          const double v_hat = v[i] / (1.0 - beta2_t);
          x[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
        }
        ++result.iterations;
        tracker.record(x, tracker.evaluate(x));
      }
      break;
    }
    case OptimizerKind::Spsa: {
      const double A = config.spsa_A.value_or(static_cast<double>(config.max_iterations) / 10.0);
      const Objective counted = [&](std::span<const double> p) { return tracker.evaluate(p); };

      double a = 0.0;
      if (config.spsa_a) {
        a = *config.spsa_a;
      } else {
        // Size a so that a_0 * |g| is about spsa_target_step at the starting point.
        double magnitude = 0.0;
        const std::size_t steps = std::max<std::size_t>(1, config.spsa_calibration_steps);
        for (std::size_t s = 0; s < steps; ++s) {
          const auto g = spsa_gradient(
              counted, x,
              {config.spsa_c, 1, Rng::derive(config.seed, kCalibrationStream, s).next()});
          double norm = 0.0;
          for (double gi : g) {
            norm = std::max(norm, std::abs(gi));
          }
          magnitude += norm;
        }
        magnitude /= static_cast<double>(steps);
        // A flat start gives no scale; fall back to a unit gradient.
        a = config.spsa_target_step * std::pow(A + 1.0, config.spsa_alpha) /
            (magnitude < 1e-12 ? 1.0 : magnitude);
      }

      for (std::size_t k = 0; k < config.max_iterations && !tracker.stopped(); ++k) {
        const double kk = static_cast<double>(k);
        const double a_k = a / std::pow(kk + 1.0 + A, config.spsa_alpha);
        const double c_k = config.spsa_c / std::pow(kk + 1.0, config.spsa_gamma);
        const auto g = spsa_gradient(
            counted, x,
            {c_k, config.spsa_resamples, Rng::derive(config.seed, kIterationStream, k).next()});
        for (std::size_t i = 0; i < n; ++i) {
          x[i] -= a_k * g[i];
        }
        ++result.iterations;
        tracker.record(x, tracker.evaluate(x));
      }
      break;
    }
    }
  } catch (const NonFiniteError &) {
    result.converged = false;
  }
  return result;
}

} // namespace qmlkit
