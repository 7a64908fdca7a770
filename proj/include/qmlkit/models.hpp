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
#include "qmlkit/kernels.hpp"
#include "qmlkit/matrix.hpp"
#include "qmlkit/optimizers.hpp"
#include "qmlkit/qnn.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

/// Features (m x d) and labels; +/-1 for classifiers, reals for regressors.
struct Dataset {
  Matrix features;
  std::vector<double> labels;

  std::size_t size() const noexcept { return features.rows(); }
  std::size_t dim() const noexcept { return features.cols(); }

  /// Non-empty, matching lengths, all finite.
  void validate() const;
  /// validate() plus every label in {-1, +1}.
  void validate_binary() const;
};

// --- variational models -----------------------------------------------------

struct VqcModel {
  Circuit feature_map;
  Circuit ansatz;
  std::vector<double> weights;
  std::vector<double> loss_history;
};

struct VqrModel {
  Circuit feature_map;
  Circuit ansatz;
  PauliObservable observable;
  std::vector<double> weights;
  std::vector<double> loss_history;
};

/// ADAM, 2000 iterations, learning rate 0.01.
OptimizerConfig default_variational_config();

/**
 * Fits a variational classifier: SamplerQnn over feature_map + ansatz with the
 * parity readout, trained on mean binary cross-entropy against the labels
 * (class 1 is label +1). Initial weights are uniform in [-pi, pi) from `seed`.
 */
VqcModel vqc_fit(const Dataset &data, const Circuit &feature_map, const Circuit &ansatz,
                 const OptimizerConfig &config, std::uint64_t seed, const Execution &exec = {});

struct ClassPrediction {
  std::vector<int> labels;
  /// P(class 1) = P(label +1) per row.
  std::vector<double> positive_probability;
};

/// Label +1 when P(class 1) > 0.5, otherwise -1 (a tie gives -1).
ClassPrediction vqc_predict(const VqcModel &model, const Matrix &features,
                            const Execution &exec = {});

/// Single Z on qubit 0.
PauliObservable default_regression_observable(std::size_t num_qubits);

/**
 * Fits a variational regressor on mean squared error between the EstimatorQnn
 * output and the labels. Labels outside [-bound, bound] of the observable are
 * rejected up front.
 */
VqrModel vqr_fit(const Dataset &data, const Circuit &feature_map, const Circuit &ansatz,
                 const PauliObservable &observable, const OptimizerConfig &config,
                 std::uint64_t seed, const Execution &exec = {});

std::vector<double> vqr_predict(const VqrModel &model, const Matrix &features,
                                const Execution &exec = {});

// --- kernel SVMs ------------------------------------------------------------

enum class SvmKind { Qsvc, Pegasos };

/**
 * Trained kernel SVM. `alphas`, `support_labels` and the rows of
 * `support_data` are aligned. QSVC keeps the support vectors (alpha > 0) and a
 * bias; Pegasos keeps every point with a nonzero violation count together
 * with lambda and the step count.
 */
struct SvmModel {
  SvmKind kind = SvmKind::Qsvc;
  Circuit feature_map{1};
  std::vector<double> alphas;
  std::vector<double> support_labels;
  Matrix support_data;
  double bias = 0.0;
  double lambda = 0.0;
  std::size_t steps = 0;
};

struct SmoOptions {
  double tolerance = 1e-3;
  std::size_t max_iterations = 1'000'000;
};

struct SmoResult {
  std::vector<double> alphas;
  double bias = 0.0;
  /// Dual objective sum(alpha) - 1/2 alpha^T Q alpha at termination.
  double objective = 0.0;
  /// Maximal KKT violation m(alpha) - M(alpha) at termination.
  double violation = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/**
 * Soft-margin SVM dual on a precomputed kernel:
 *
 *     max sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij,  0 <= a_i <= C,  sum_i a_i y_i = 0
 *
 * by pairwise coordinate ascent on the maximal violating pair. Stops when the
 * violation drops below the tolerance, when the iteration cap is hit, or when
 * a selected pair cannot move; the last two report `converged == false`.
 */
SmoResult solve_svm_dual(const Matrix &kernel, std::span<const double> labels, double C,
                         const SmoOptions &options = {});

/// sum(alpha) - 1/2 alpha^T Q alpha with Q_ij = y_i y_j K_ij.
double svm_dual_objective(const Matrix &kernel, std::span<const double> labels,
                          std::span<const double> alphas);

struct QsvcFit {
  SvmModel model;
  SmoResult solver;
};

QsvcFit qsvc_fit(const Dataset &data, const Circuit &feature_map, double C = 1.0,
                 const Execution &exec = {}, const SmoOptions &options = {});

struct SvmPrediction {
  std::vector<int> labels;
  std::vector<double> decision;
};

/// Label is the sign of the decision value; exactly 0 maps to -1.
SvmPrediction svm_predict(const SvmModel &model, const Matrix &features,
                          const Execution &exec = {});

/// Decision values from a precomputed kernel between the support data (rows) and queries (cols).
std::vector<double> svm_decision(const SvmModel &model, const Matrix &support_by_query);

struct PegasosStep {
  std::size_t index = 0;
  bool updated = false;
};

struct PegasosFit {
  SvmModel model;
  /// Violation count of every training point (the model keeps only the nonzero ones).
  std::vector<double> alphas;
  std::vector<PegasosStep> trace;
};

/**
 * Kernelized Pegasos: at step t draw i uniformly, and increment alpha_i when
 * y_i / (lambda t) * sum_j alpha_j y_j K(x_j, x_i) < 1. Kernel entries are
 * evaluated lazily and memoized per index pair.
 */
PegasosFit pegasos_fit(const Dataset &data, const Circuit &feature_map, double lambda = 0.01,
                       std::size_t steps = 1000, std::uint64_t seed = 0,
                       const Execution &exec = {});

} // namespace qmlkit
