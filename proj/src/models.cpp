/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "qmlkit/error.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

namespace {

constexpr double kProbabilityFloor = 1e-12;

// Streams under a fit's seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kOptimizerStream = 2;
constexpr std::uint64_t kSampleStream = 3;

std::vector<std::size_t> iota(std::size_t begin, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = begin + i;
  }
  return out;
}

std::vector<double> initial_weights(std::size_t count, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, kInitStream);
  std::vector<double> w(count);
  for (auto &v : w) {
    v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  }
  return w;
}

Execution per_sample(const Execution &exec, std::size_t sample) {
  Execution e = exec;
  if (!e.exact()) {
    e.seed = Rng::derive(exec.seed, kSampleStream, sample).next();
  }
  return e;
}

void check_width(const Matrix &features, std::size_t expected) {
  if (features.rows() > 0 && features.cols() != expected) {
    throw ValidationError("model expects " + std::to_string(expected) + " features, got " +
                          std::to_string(features.cols()));
  }
}

/// Feature-map parameters become the inputs and ansatz parameters the weights.
struct VariationalLayout {
  Circuit circuit;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> weights;
};

VariationalLayout layout(const Circuit &feature_map, const Circuit &ansatz) {
  Circuit circuit = compose(feature_map, ansatz);
  const std::size_t d = feature_map.num_parameters();
  if (circuit.num_parameters() != d + ansatz.num_parameters()) {
    throw ValidationError("feature map and ansatz must not share parameters");
  }
  return {std::move(circuit), iota(0, d), iota(d, ansatz.num_parameters())};
}

SamplerQnn classifier_qnn(const Circuit &feature_map, const Circuit &ansatz) {
  auto l = layout(feature_map, ansatz);
  return SamplerQnn(std::move(l.circuit), std::move(l.inputs), std::move(l.weights),
                    parity_interpret(), 2);
}

EstimatorQnn regressor_qnn(const Circuit &feature_map, const Circuit &ansatz,
                           const PauliObservable &observable) {
  auto l = layout(feature_map, ansatz);
  return EstimatorQnn(std::move(l.circuit), {observable}, std::move(l.inputs),
                      std::move(l.weights));
}

std::size_t class_of(double label) { return label > 0 ? 1 : 0; }

} // namespace

void Dataset::validate() const {
  if (features.rows() == 0 || features.cols() == 0) {
    throw ValidationError("dataset needs at least one row and one feature");
  }
  if (labels.size() != features.rows()) {
    throw ValidationError("dataset has " + std::to_string(features.rows()) + " rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  for (double v : features.data()) {
    if (!std::isfinite(v)) {
      throw ValidationError("dataset features contain a non-finite value");
    }
  }
  for (double v : labels) {
    if (!std::isfinite(v)) {
      throw ValidationError("dataset labels contain a non-finite value");
    }
  }
}

void Dataset::validate_binary() const {
  validate();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw ValidationError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                            " is not -1 or +1");
    }
  }
}

OptimizerConfig default_variational_config() {
  OptimizerConfig c;
  c.kind = OptimizerKind::Adam;
  c.max_iterations = 2000;
  c.learning_rate = 0.01;
  return c;
}

VqcModel vqc_fit(const Dataset &data, const Circuit &feature_map, const Circuit &ansatz,
                 const OptimizerConfig &config, std::uint64_t seed, const Execution &exec) {
  data.validate_binary();
  if (data.dim() != feature_map.num_parameters()) {
    throw ValidationError("dataset has " + std::to_string(data.dim()) +
                          " features but the feature map takes " +
                          std::to_string(feature_map.num_parameters()));
  }
  const SamplerQnn qnn = classifier_qnn(feature_map, ansatz);
  const std::size_t m = data.size();

  const Objective loss = [&](std::span<const double> w) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto p = qnn.forward(data.features.row(i), w, per_sample(exec, i));
      total -= std::log(std::max(p[class_of(data.labels[i])], kProbabilityFloor));
    }
    return total / static_cast<double>(m);
  };
  const GradientFn gradient = [&](std::span<const double> w) {
    std::vector<double> g(w.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto cls = class_of(data.labels[i]);
      const auto p = qnn.forward(data.features.row(i), w, per_sample(exec, i));
      const auto jac = qnn.backward(data.features.row(i), w, Wrt::WeightsOnly, per_sample(exec, i));
      const double scale = -1.0 / std::max(p[cls], kProbabilityFloor);
      for (std::size_t k = 0; k < w.size(); ++k) {
        g[k] += scale * jac.weight(cls, k);
      }
    }
    for (auto &v : g) {
      v /= static_cast<double>(m);
    }
    return g;
  };

  OptimizerConfig cfg = config;
  cfg.seed = Rng::derive(seed, kOptimizerStream).next();
  const auto result = minimize(loss, gradient, initial_weights(qnn.num_weights(), seed), cfg);
  return {feature_map, ansatz, result.best_point, result.history};
}

ClassPrediction vqc_predict(const VqcModel &model, const Matrix &features, const Execution &exec) {
  check_width(features, model.feature_map.num_parameters());
  const SamplerQnn qnn = classifier_qnn(model.feature_map, model.ansatz);
  ClassPrediction out;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto p = qnn.forward(features.row(i), model.weights, per_sample(exec, i));
    out.positive_probability.push_back(p[1]);
    out.labels.push_back(p[1] > 0.5 ? 1 : -1);
  }
  return out;
}

PauliObservable default_regression_observable(std::size_t num_qubits) {
  return PauliObservable::single(num_qubits, 'Z', 0);
}

VqrModel vqr_fit(const Dataset &data, const Circuit &feature_map, const Circuit &ansatz,
                 const PauliObservable &observable, const OptimizerConfig &config,
                 std::uint64_t seed, const Execution &exec) {
  data.validate();
  if (data.dim() != feature_map.num_parameters()) {
    throw ValidationError("dataset has " + std::to_string(data.dim()) +
                          " features but the feature map takes " +
                          std::to_string(feature_map.num_parameters()));
  }
  const double bound = observable.bound();
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (std::abs(data.labels[i]) > bound + 1e-12) {
      throw ValidationError("label " + std::to_string(data.labels[i]) + " at row " +
                            std::to_string(i) + " lies outside the observable range [-" +
                            std::to_string(bound) + ", " + std::to_string(bound) + "]");
    }
  }
  const EstimatorQnn qnn = regressor_qnn(feature_map, ansatz, observable);
  const std::size_t m = data.size();

  const Objective loss = [&](std::span<const double> w) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r =
          qnn.forward(data.features.row(i), w, per_sample(exec, i))[0] - data.labels[i];
      total += r * r;
    }
    return total / static_cast<double>(m);
  };
  const GradientFn gradient = [&](std::span<const double> w) {
    std::vector<double> g(w.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double r =
          qnn.forward(data.features.row(i), w, per_sample(exec, i))[0] - data.labels[i];
      const auto jac = qnn.backward(data.features.row(i), w, Wrt::WeightsOnly, per_sample(exec, i));
      for (std::size_t k = 0; k < w.size(); ++k) {
        g[k] += 2.0 * r * jac.weight(0, k);
      }
    }
    for (auto &v : g) {
      v /= static_cast<double>(m);
    }
    return g;
  };

  OptimizerConfig cfg = config;
  cfg.seed = Rng::derive(seed, kOptimizerStream).next();
  const auto result = minimize(loss, gradient, initial_weights(qnn.num_weights(), seed), cfg);
  return {feature_map, ansatz, observable, result.best_point, result.history};
}

std::vector<double> vqr_predict(const VqrModel &model, const Matrix &features,
                                const Execution &exec) {
  check_width(features, model.feature_map.num_parameters());
  const EstimatorQnn qnn = regressor_qnn(model.feature_map, model.ansatz, model.observable);
  std::vector<double> out;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    out.push_back(qnn.forward(features.row(i), model.weights, per_sample(exec, i))[0]);
  }
  return out;
}

double svm_dual_objective(const Matrix &kernel, std::span<const double> labels,
                          std::span<const double> alphas) {
  const std::size_t m = labels.size();
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    linear += alphas[i];
    for (std::size_t j = 0; j < m; ++j) {
      quad += alphas[i] * alphas[j] * labels[i] * labels[j] * kernel(i, j);
    }
  }
  return linear - 0.5 * quad;
}

SmoResult solve_svm_dual(const Matrix &kernel, std::span<const double> labels, double C,
                         const SmoOptions &options) {
  const std::size_t m = labels.size();
  if (kernel.rows() != m || kernel.cols() != m) {
    throw ValidationError("SVM dual needs an m x m kernel for m labels");
  }
  if (!(C > 0.0)) {
    throw ValidationError("regularization C must be positive");
  }
  for (double y : labels) {
    if (y != 1.0 && y != -1.0) {
      throw ValidationError("SVM labels must be -1 or +1");
    }
  }
  constexpr double kTau = 1e-12;
  const auto Q = [&](std::size_t i, std::size_t j) { return labels[i] * labels[j] * kernel(i, j); };

  SmoResult r;
  r.alphas.assign(m, 0.0);
  auto &alpha = r.alphas;
  // Gradient of f(alpha) = 1/2 alpha^T Q alpha - sum(alpha); starts at -1.
  std::vector<double> grad(m, -1.0);

  const auto in_up = [&](std::size_t t) {
    return (labels[t] > 0 && alpha[t] < C) || (labels[t] < 0 && alpha[t] > 0);
  };
  const auto in_low = [&](std::size_t t) {
    return (labels[t] < 0 && alpha[t] < C) || (labels[t] > 0 && alpha[t] > 0);
  };

  while (true) {
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    std::size_t i = m, j = m;
    for (std::size_t t = 0; t < m; ++t) {
      const double v = -labels[t] * grad[t];
      if (in_up(t) && v > m_up) {
        m_up = v;
        i = t;
      }
      if (in_low(t) && v < m_low) {
        m_low = v;
        j = t;
      }
    }
    r.violation = (i == m || j == m) ? 0.0 : m_up - m_low;
    if (r.violation < options.tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= options.max_iterations) {
      break;
    }
    ++r.iterations;

    const double old_i = alpha[i], old_j = alpha[j];
    if (labels[i] != labels[j]) {
      double quad = Q(i, i) + Q(j, j) + 2.0 * Q(i, j);
      if (quad <= 0) {
        quad = kTau;
      }
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = Q(i, i) + Q(j, j) - 2.0 * Q(i, j);
      if (quad <= 0) {
        quad = kTau;
      }
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }

    const double d_i = alpha[i] - old_i, d_j = alpha[j] - old_j;
    if (d_i == 0.0 && d_j == 0.0) {
      break; // the selected pair cannot move
    }
    for (std::size_t t = 0; t < m; ++t) {
      grad[t] += Q(t, i) * d_i + Q(t, j) * d_j;
    }
  }

  // Offset from the free support vectors; midpoint of the feasible range when none are free.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < m; ++t) {
    const double yg = labels[t] * grad[t];
    if (alpha[t] >= C) {
      if (labels[t] < 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (alpha[t] <= 0) {
      if (labels[t] > 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2;
  r.bias = std::isfinite(rho) ? -rho : 0.0;
  r.objective = svm_dual_objective(kernel, labels, alpha);
  return r;
}

QsvcFit qsvc_fit(const Dataset &data, const Circuit &feature_map, double C, const Execution &exec,
                 const SmoOptions &options) {
  data.validate_binary();
  if (!(C > 0.0)) {
    throw ValidationError("regularization C must be positive");
  }
  const KernelMatrix gram = kernel_matrix(data.features, feature_map, exec);
  SmoResult solver = solve_svm_dual(gram.entries, data.labels, C, options);

  SvmModel model;
  model.kind = SvmKind::Qsvc;
  model.feature_map = feature_map;
  model.bias = solver.bias;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (solver.alphas[i] > 0.0) {
      model.alphas.push_back(solver.alphas[i]);
      model.support_labels.push_back(data.labels[i]);
      rows.push_back(data.features.row_vector(i));
    }
  }
  model.support_data = rows.empty() ? Matrix(0, data.dim()) : Matrix::from_rows(rows);
  return {std::move(model), std::move(solver)};
}

std::vector<double> svm_decision(const SvmModel &model, const Matrix &support_by_query) {
  const std::size_t s = model.alphas.size();
  if (support_by_query.rows() != s) {
    throw ValidationError("kernel rows do not match the support set");
  }
  std::vector<double> out(support_by_query.cols(), 0.0);
  for (std::size_t q = 0; q < out.size(); ++q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      acc += model.alphas[i] * model.support_labels[i] * support_by_query(i, q);
    }
    if (model.kind == SvmKind::Qsvc) {
      out[q] = acc + model.bias;
    } else {
      out[q] = acc / (model.lambda * static_cast<double>(model.steps));
    }
  }
  return out;
}

SvmPrediction svm_predict(const SvmModel &model, const Matrix &features, const Execution &exec) {
  check_width(features, model.feature_map.num_parameters());
  SvmPrediction out;
  if (model.alphas.empty()) {
    out.decision.assign(features.rows(), model.kind == SvmKind::Qsvc ? model.bias : 0.0);
  } else {
    const auto k = kernel_matrix(model.support_data, features, model.feature_map, exec);
    out.decision = svm_decision(model, k.entries);
  }
  for (double d : out.decision) {
    out.labels.push_back(d > 0.0 ? 1 : -1);
  }
  return out;
}

PegasosFit pegasos_fit(const Dataset &data, const Circuit &feature_map, double lambda,
                       std::size_t steps, std::uint64_t seed, const Execution &exec) {
  data.validate_binary();
  if (!(lambda > 0.0)) {
    throw ValidationError("Pegasos lambda must be positive");
  }
  if (steps < 1) {
    throw ValidationError("Pegasos needs at least one step");
  }
  const std::size_t m = data.size();
  const auto spec = TrainableKernelSpec::data_only(feature_map);
  const KernelEvaluator evaluator(spec, {}, data.features, data.features, exec);

  std::map<std::pair<std::size_t, std::size_t>, double> cache;
  const auto kernel = [&](std::size_t a, std::size_t b) {
    const auto key = std::minmax(a, b);
    if (a == b && exec.exact()) {
      return 1.0;
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, evaluator.entry(key.first, key.second)).first;
    }
    return it->second;
  };

  PegasosFit fit;
  fit.alphas.assign(m, 0.0);
  fit.trace.reserve(steps);
  Rng rng(seed);
  for (std::size_t t = 1; t <= steps; ++t) {
    const auto i = static_cast<std::size_t>(rng.below(m));
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (fit.alphas[j] != 0.0) {
        acc += fit.alphas[j] * data.labels[j] * kernel(j, i);
      }
    }
    const double margin = data.labels[i] * acc / (lambda * static_cast<double>(t));
    const bool update = margin < 1.0;
    if (update) {
      fit.alphas[i] += 1.0;
    }
    fit.trace.push_back({i, update});
  }

  SvmModel &model = fit.model;
  model.kind = SvmKind::Pegasos;
  model.feature_map = feature_map;
  model.lambda = lambda;
  model.steps = steps;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (fit.alphas[i] > 0.0) {
      model.alphas.push_back(fit.alphas[i]);
      model.support_labels.push_back(data.labels[i]);
      rows.push_back(data.features.row_vector(i));
    }
  }
  model.support_data = Matrix::from_rows(rows);
  return fit;
}

} // namespace qmlkit
