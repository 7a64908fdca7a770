/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qmlkit/circuit.hpp"
#include "qmlkit/matrix.hpp"
#include "qmlkit/optimizers.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

/// Fidelity kernel values K(x_i, y_j). Square and mirrored when built from one dataset.
struct KernelMatrix {
  Matrix entries;
  bool symmetric = false;

  std::size_t rows() const noexcept { return entries.rows(); }
  std::size_t cols() const noexcept { return entries.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/**
 * Feature map whose parameters are split, by explicit index lists, into data
 * parameters (fed by the features, in list order) and trainable parameters.
 */
class TrainableKernelSpec {
public:
  TrainableKernelSpec(Circuit feature_map, std::vector<std::size_t> data_indices,
                      std::vector<std::size_t> trainable_indices);

  /// Every parameter is a data parameter, in circuit order.
  static TrainableKernelSpec data_only(Circuit feature_map);

  const Circuit &feature_map() const noexcept { return feature_map_; }
  const std::vector<std::size_t> &data_indices() const noexcept { return data_; }
  const std::vector<std::size_t> &trainable_indices() const noexcept { return trainable_; }
  std::size_t data_count() const noexcept { return data_.size(); }
  std::size_t trainable_count() const noexcept { return trainable_.size(); }

  /// Full circuit value vector for one feature row and the trainable values.
  std::vector<double> values(std::span<const double> features,
                             std::span<const double> trainable) const;

private:
  Circuit feature_map_;
  std::vector<std::size_t> data_;
  std::vector<std::size_t> trainable_;
};

/**
 * Entry-wise kernel evaluation over a (rows, cols) dataset pair.
 *
 * In shot mode entry (i, j) uses the seed derived from (master seed, i * cols + j),
 * so any evaluation order gives the same matrix.
 */
class KernelEvaluator {
public:
  KernelEvaluator(const TrainableKernelSpec &spec, std::span<const double> trainable,
                  const Matrix &rows, const Matrix &cols, const Execution &exec);

  double entry(std::size_t i, std::size_t j) const;

private:
  const TrainableKernelSpec &spec_;
  std::vector<double> trainable_;
  const Matrix &rows_;
  const Matrix &cols_;
  Execution exec_;
};

/**
 * Gram matrix of `x` under `feature_map`. Only the upper triangle is evaluated
 * and then mirrored; the diagonal is 1 without evaluation in exact mode and
 * sampled in shot mode.
 */
KernelMatrix kernel_matrix(const Matrix &x, const Circuit &feature_map, const Execution &exec = {});

/// Cross kernel K(x_i, y_j).
KernelMatrix kernel_matrix(const Matrix &x, const Matrix &y, const Circuit &feature_map,
                           const Execution &exec = {});

KernelMatrix trainable_kernel_matrix(const TrainableKernelSpec &spec,
                                     std::span<const double> trainable, const Matrix &x,
                                     const Execution &exec = {});

KernelMatrix trainable_kernel_matrix(const TrainableKernelSpec &spec,
                                     std::span<const double> trainable, const Matrix &x,
                                     const Matrix &y, const Execution &exec = {});

/// <K, y y^T>_F / (||K||_F ||y y^T||_F)
double kernel_alignment(const KernelMatrix &kernel, std::span<const double> labels);

struct KernelTrainingResult {
  std::vector<double> trainable;
  /// Best-so-far value of 1 - alignment, starting with the initial point.
  std::vector<double> history;
  double best_alignment = 0.0;
  bool converged = false;
};

/**
 * Maximizes kernel-target alignment over the trainable parameters by
 * minimizing 1 - alignment with `config` (SPSA unless configured otherwise).
 */
KernelTrainingResult train_kernel(const TrainableKernelSpec &spec, const Matrix &x,
                                  std::span<const double> labels, std::vector<double> initial,
                                  const OptimizerConfig &config, const Execution &exec = {});

/// Optimizer defaults for kernel training.
OptimizerConfig default_kernel_training_config();

} // namespace qmlkit
