/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "qmlkit/error.hpp"
#include "qmlkit/fidelity.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

TrainableKernelSpec::TrainableKernelSpec(Circuit feature_map, std::vector<std::size_t> data_indices,
                                         std::vector<std::size_t> trainable_indices)
    : feature_map_(std::move(feature_map)), data_(std::move(data_indices)),
      trainable_(std::move(trainable_indices)) {
  const std::size_t total = feature_map_.num_parameters();
  if (data_.size() + trainable_.size() != total) {
    throw ValidationError("kernel split covers " +
                          std::to_string(data_.size() + trainable_.size()) +
                          " parameters but the feature map has " + std::to_string(total));
  }
  std::vector<bool> seen(total, false);
  for (auto idx : data_) {
    if (idx >= total || seen[idx]) {
      throw ValidationError("kernel split is not a partition of the parameter indices");
    }
    seen[idx] = true;
  }
  for (auto idx : trainable_) {
    if (idx >= total || seen[idx]) {
      throw ValidationError("kernel split is not a partition of the parameter indices");
    }
    seen[idx] = true;
  }
}

TrainableKernelSpec TrainableKernelSpec::data_only(Circuit feature_map) {
  std::vector<std::size_t> data(feature_map.num_parameters());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = i;
  }
  return {std::move(feature_map), std::move(data), {}};
}

std::vector<double> TrainableKernelSpec::values(std::span<const double> features,
                                                std::span<const double> trainable) const {
  if (features.size() != data_.size()) {
    throw ValidationError("feature map expects " + std::to_string(data_.size()) +
                          " features, got " + std::to_string(features.size()));
  }
  if (trainable.size() != trainable_.size()) {
    throw ValidationError("feature map expects " + std::to_string(trainable_.size()) +
                          " trainable values, got " + std::to_string(trainable.size()));
  }
  std::vector<double> out(feature_map_.num_parameters());
  for (std::size_t k = 0; k < data_.size(); ++k) {
    out[data_[k]] = features[k];
  }
  for (std::size_t k = 0; k < trainable_.size(); ++k) {
    out[trainable_[k]] = trainable[k];
  }
  return out;
}

KernelEvaluator::KernelEvaluator(const TrainableKernelSpec &spec, std::span<const double> trainable,
                                 const Matrix &rows, const Matrix &cols, const Execution &exec)
    : spec_(spec), trainable_(trainable.begin(), trainable.end()), rows_(rows), cols_(cols),
      exec_(exec) {
  if (trainable_.size() != spec.trainable_count()) {
    throw ValidationError("expected " + std::to_string(spec.trainable_count()) +
                          " trainable values, got " + std::to_string(trainable_.size()));
  }
  for (const Matrix *m : {&rows, &cols}) {
    if (m->rows() > 0 && m->cols() != spec.data_count()) {
      throw ValidationError("dataset has " + std::to_string(m->cols()) +
                            " features but the feature map takes " +
                            std::to_string(spec.data_count()));
    }
  }
}

double KernelEvaluator::entry(std::size_t i, std::size_t j) const {
  const auto va = spec_.values(rows_.row(i), trainable_);
  const auto vb = spec_.values(cols_.row(j), trainable_);
  Execution exec = exec_;
  if (!exec.exact()) {
    exec.seed = Rng::derive(exec_.seed, i * cols_.rows() + j).next();
  }
  return compute_uncompute({spec_.feature_map(), spec_.feature_map(), va, vb, exec});
}

KernelMatrix trainable_kernel_matrix(const TrainableKernelSpec &spec,
                                     std::span<const double> trainable, const Matrix &x,
                                     const Execution &exec) {
  const KernelEvaluator eval(spec, trainable, x, x, exec);
  const std::size_t m = x.rows();
  KernelMatrix k{Matrix(m, m, 0.0), true};
  for (std::size_t i = 0; i < m; ++i) {
    k.entries(i, i) = exec.exact() ? 1.0 : eval.entry(i, i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = eval.entry(i, j);
      k.entries(i, j) = v;
      k.entries(j, i) = v;
    }
  }
  return k;
}

KernelMatrix trainable_kernel_matrix(const TrainableKernelSpec &spec,
                                     std::span<const double> trainable, const Matrix &x,
                                     const Matrix &y, const Execution &exec) {
  const KernelEvaluator eval(spec, trainable, x, y, exec);
  KernelMatrix k{Matrix(x.rows(), y.rows(), 0.0), false};
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.rows(); ++j) {
      k.entries(i, j) = eval.entry(i, j);
    }
  }
  return k;
}

KernelMatrix kernel_matrix(const Matrix &x, const Circuit &feature_map, const Execution &exec) {
  return trainable_kernel_matrix(TrainableKernelSpec::data_only(feature_map), {}, x, exec);
}

KernelMatrix kernel_matrix(const Matrix &x, const Matrix &y, const Circuit &feature_map,
                           const Execution &exec) {
  return trainable_kernel_matrix(TrainableKernelSpec::data_only(feature_map), {}, x, y, exec);
}

double kernel_alignment(const KernelMatrix &kernel, std::span<const double> labels) {
  const std::size_t m = kernel.rows();
  if (kernel.cols() != m) {
    throw ValidationError("alignment needs a square kernel matrix");
  }
  if (labels.size() != m) {
    throw ValidationError("alignment got " + std::to_string(labels.size()) + " labels for a " +
                          std::to_string(m) + "x" + std::to_string(m) + " kernel");
  }
  double inner = 0.0, k_norm = 0.0, y_norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double yy = labels[i] * labels[j];
      inner += kernel(i, j) * yy;
      k_norm += kernel(i, j) * kernel(i, j);
      y_norm += yy * yy;
    }
  }
  if (k_norm == 0.0 || y_norm == 0.0) {
    throw ValidationError("alignment is undefined for an all-zero kernel or label vector");
  }
  return inner / (std::sqrt(k_norm) * std::sqrt(y_norm));
}

OptimizerConfig default_kernel_training_config() {
  OptimizerConfig c;
  c.kind = OptimizerKind::Spsa;
  c.max_iterations = 100;
  return c;
}

KernelTrainingResult train_kernel(const TrainableKernelSpec &spec, const Matrix &x,
                                  std::span<const double> labels, std::vector<double> initial,
                                  const OptimizerConfig &config, const Execution &exec) {
  for (double y : labels) {
    if (y != 1.0 && y != -1.0) {
      throw ValidationError("kernel training needs labels in {-1, +1}");
    }
  }
  if (initial.size() != spec.trainable_count()) {
    throw ValidationError("expected " + std::to_string(spec.trainable_count()) +
                          " initial trainable values, got " + std::to_string(initial.size()));
  }
  const Objective loss = [&](std::span<const double> w) {
    return 1.0 - kernel_alignment(trainable_kernel_matrix(spec, w, x, exec), labels);
  };

  KernelTrainingResult out;
  if (spec.trainable_count() == 0) {
    const double v = loss(initial);
    out.history = {v};
    out.best_alignment = 1.0 - v;
    out.converged = true;
    return out;
  }
  const OptimizeResult r = minimize(loss, {}, std::move(initial), config);
  out.trainable = r.best_point;
  out.history = r.best_so_far();
  out.best_alignment = 1.0 - r.best_value;
  out.converged = r.converged;
  return out;
}

} // namespace qmlkit
