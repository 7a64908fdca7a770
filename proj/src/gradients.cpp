/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/gradients.hpp"

#include <algorithm>
#include <cmath>

#include "qmlkit/error.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

namespace {

double checked(double v, const char *what) {
  if (!std::isfinite(v)) {
    throw NonFiniteError(std::string(what) + " returned a non-finite value");
  }
  return v;
}

std::vector<std::size_t> resolve_wrt(const Circuit &circuit, std::span<const std::size_t> wrt) {
  std::vector<std::size_t> out;
  if (wrt.empty()) {
    out.resize(circuit.num_parameters());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = i;
    }
    return out;
  }
  for (auto p : wrt) {
    if (p >= circuit.num_parameters()) {
      throw ValidationError("parameter index " + std::to_string(p) + " out of range");
    }
  }
  return {wrt.begin(), wrt.end()};
}

} // namespace

std::vector<ShiftOccurrence> shift_occurrences(const Circuit &circuit,
                                               std::span<const std::size_t> wrt) {
  const auto targets = resolve_wrt(circuit, wrt);
  const auto wanted = [&](std::size_t idx) {
    return std::find(targets.begin(), targets.end(), idx) != targets.end();
  };

  std::vector<ShiftOccurrence> out;
  for (std::size_t g = 0; g < circuit.gates().size(); ++g) {
    const auto &gate = circuit.gates()[g];
    if (!gate.angle) {
      continue;
    }
    const auto &factors = gate.angle->factors();
    for (const auto &f : factors) {
      const auto idx = *circuit.parameter_index(f.param);
      if (!wanted(idx)) {
        continue;
      }
      const auto &name = f.param.name();
      if (gate.kind == GateKind::CRY) {
        throw UnsupportedParameterError(name, "it drives a controlled rotation");
      }
      if (factors.size() != 1) {
        throw UnsupportedParameterError(name, "it appears in a product angle");
      }
      const double c = gate.angle->coefficient() * f.scale;
      if (f.offset != 0.0 || std::abs(std::abs(c) - 1.0) > 1e-12) {
        throw UnsupportedParameterError(name, "its angle is not of the form +/-theta");
      }
      out.push_back({g, idx, c});
    }
  }
  return out;
}

Matrix shift_jacobian(const Circuit &circuit, std::span<const double> values, double shift,
                      std::size_t outputs, const BoundEvaluator &evaluate,
                      std::span<const std::size_t> wrt) {
  const double denom = 2.0 * std::sin(shift);
  if (!(std::abs(std::sin(shift)) > 1e-9)) {
    throw ValidationError("shift must satisfy |sin s| > 1e-9");
  }
  if (values.size() != circuit.num_parameters()) {
    throw ValidationError("expected " + std::to_string(circuit.num_parameters()) +
                          " parameter values, got " + std::to_string(values.size()));
  }
  const auto targets = resolve_wrt(circuit, wrt);
  const auto occurrences = shift_occurrences(circuit, targets);
  const Circuit bound = bind(circuit, values);

  Matrix jac(targets.size(), outputs, 0.0);
  for (std::size_t o = 0; o < occurrences.size(); ++o) {
    const auto &occ = occurrences[o];
    const double theta = values[occ.parameter];
    const auto plus =
        evaluate(bound.with_angle(occ.gate, occ.coefficient * (theta + shift)), 2 * o);
    const auto minus =
        evaluate(bound.with_angle(occ.gate, occ.coefficient * (theta - shift)), 2 * o + 1);
    if (plus.size() != outputs || minus.size() != outputs) {
      throw ValidationError("evaluator returned the wrong number of outputs");
    }
    const auto row = static_cast<std::size_t>(
        std::find(targets.begin(), targets.end(), occ.parameter) - targets.begin());
    for (std::size_t k = 0; k < outputs; ++k) {
      jac(row, k) += (checked(plus[k], "evaluator") - checked(minus[k], "evaluator")) / denom;
    }
  }
  return jac;
}

std::vector<double> param_shift_gradient(const GradientRequest &req) {
  const auto evaluate = [&](const Circuit &bound, std::uint64_t stream) {
    Execution exec = req.exec;
    if (!exec.exact()) {
      exec.seed = Rng::derive(req.exec.seed, stream).next();
    }
    return std::vector<double>{estimate(run(bound), req.observable, exec)};
  };
  const Matrix jac = shift_jacobian(req.circuit, req.values, req.shift, 1, evaluate);
  std::vector<double> grad(jac.rows());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = jac(i, 0);
  }
  return grad;
}

std::vector<double> spsa_gradient(const Objective &f, std::span<const double> values,
                                  const SpsaGradientConfig &config) {
  if (!(config.perturbation > 0.0) || !std::isfinite(config.perturbation)) {
    throw ValidationError("SPSA perturbation must be finite and positive");
  }
  if (config.resamples == 0) {
    throw ValidationError("SPSA needs at least one resample");
  }
  const std::size_t n = values.size();
  std::vector<double> grad(n, 0.0);
  std::vector<double> delta(n), plus(n), minus(n);
  for (std::size_t r = 0; r < config.resamples; ++r) {
    Rng rng = Rng::derive(config.seed, r);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = rng.rademacher();
      plus[i] = values[i] + config.perturbation * delta[i];
      minus[i] = values[i] - config.perturbation * delta[i];
    }
    const double diff = checked(f(plus), "objective") - checked(f(minus), "objective");
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] += diff / (2.0 * config.perturbation * delta[i]);
    }
  }
  for (auto &g : grad) {
    g /= static_cast<double>(config.resamples);
  }
  return grad;
}

std::vector<double> finite_difference(const Objective &f, std::span<const double> values,
                                      double step) {
  if (!(step > 0.0)) {
    throw ValidationError("finite-difference step must be positive");
  }
  std::vector<double> point(values.begin(), values.end());
  std::vector<double> grad(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    point[i] = values[i] + step;
    const double up = checked(f(point), "objective");
    point[i] = values[i] - step;
    const double down = checked(f(point), "objective");
    point[i] = values[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

} // namespace qmlkit
