/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qmlkit/circuit.hpp"
#include "qmlkit/gradients.hpp"
#include "qmlkit/matrix.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

/// Jacobians d output / d input (outputs x inputs) and d output / d weight (outputs x weights).
struct QnnGradients {
  Matrix input;
  Matrix weight;
};

/// Which Jacobian blocks a backward pass computes. Skipping inputs lets a
/// network differentiate its weights even when inputs enter through product angles.
enum class Wrt { InputsAndWeights, WeightsOnly };

/// Input/weight index partition shared by both network kinds.
class ParameterSplit {
public:
  ParameterSplit(const Circuit &circuit, std::vector<std::size_t> inputs,
                 std::vector<std::size_t> weights);

  const std::vector<std::size_t> &inputs() const noexcept { return inputs_; }
  const std::vector<std::size_t> &weights() const noexcept { return weights_; }

  std::vector<double> merge(std::span<const double> inputs, std::span<const double> weights) const;

private:
  std::vector<std::size_t> inputs_;
  std::vector<std::size_t> weights_;
  std::size_t total_ = 0;
};

/// Network whose outputs are expectation values, one per observable.
class EstimatorQnn {
public:
  EstimatorQnn(Circuit circuit, std::vector<PauliObservable> observables,
               std::vector<std::size_t> input_indices, std::vector<std::size_t> weight_indices);

  const Circuit &circuit() const noexcept { return circuit_; }
  const std::vector<PauliObservable> &observables() const noexcept { return observables_; }
  const ParameterSplit &split() const noexcept { return split_; }
  std::size_t output_dim() const noexcept { return observables_.size(); }
  std::size_t num_inputs() const noexcept { return split_.inputs().size(); }
  std::size_t num_weights() const noexcept { return split_.weights().size(); }

  std::vector<double> forward(std::span<const double> inputs, std::span<const double> weights,
                              const Execution &exec = {}) const;

  /// Parameter-shift Jacobians. Shot mode gives a stochastic estimate.
  QnnGradients backward(std::span<const double> inputs, std::span<const double> weights,
                        Wrt wrt = Wrt::InputsAndWeights, const Execution &exec = {}) const;

private:
  Circuit circuit_;
  std::vector<PauliObservable> observables_;
  ParameterSplit split_;
};

/// Maps a measured basis index to an output class.
using Interpret = std::function<std::size_t(std::uint64_t outcome)>;

/// Outcome index itself; output_dim = 2^n.
Interpret identity_interpret();
/// Parity of the outcome bits; output_dim = 2.
Interpret parity_interpret();

/// Network whose outputs are probabilities of interpreted measurement outcomes.
class SamplerQnn {
public:
  /// Checks every one of the 2^n outcomes against `output_dim`.
  SamplerQnn(Circuit circuit, std::vector<std::size_t> input_indices,
             std::vector<std::size_t> weight_indices, Interpret interpret, std::size_t output_dim);

  const Circuit &circuit() const noexcept { return circuit_; }
  const ParameterSplit &split() const noexcept { return split_; }
  std::size_t output_dim() const noexcept { return output_dim_; }
  std::size_t num_inputs() const noexcept { return split_.inputs().size(); }
  std::size_t num_weights() const noexcept { return split_.weights().size(); }

  std::vector<double> forward(std::span<const double> inputs, std::span<const double> weights,
                              const Execution &exec = {}) const;

  /// Each output probability is the expectation of a diagonal projector, so
  /// the same occurrence shifts as for expectation values apply.
  QnnGradients backward(std::span<const double> inputs, std::span<const double> weights,
                        Wrt wrt = Wrt::InputsAndWeights, const Execution &exec = {}) const;

private:
  std::vector<double> accumulate(const QuasiDistribution &dist) const;

  Circuit circuit_;
  ParameterSplit split_;
  Interpret interpret_;
  std::size_t output_dim_;
  std::vector<std::size_t> class_of_outcome_;
};

} // namespace qmlkit
