/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/qnn.hpp"

#include <bit>

#include "qmlkit/error.hpp"
#include "qmlkit/random.hpp"

namespace qmlkit {

namespace {

Execution stream_exec(const Execution &base, std::uint64_t stream) {
  Execution e = base;
  if (!e.exact()) {
    e.seed = Rng::derive(base.seed, stream).next();
  }
  return e;
}

/// Splits a (parameters x outputs) Jacobian into transposed input and weight blocks.
QnnGradients split_jacobian(const Matrix &jac, const std::vector<std::size_t> &rows,
                            const ParameterSplit &split, std::size_t outputs, Wrt wrt) {
  QnnGradients g;
  g.weight = Matrix(outputs, split.weights().size(), 0.0);
  if (wrt == Wrt::InputsAndWeights) {
    g.input = Matrix(outputs, split.inputs().size(), 0.0);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < split.inputs().size(); ++k) {
      if (wrt == Wrt::InputsAndWeights && split.inputs()[k] == rows[r]) {
        for (std::size_t o = 0; o < outputs; ++o) {
          g.input(o, k) = jac(r, o);
        }
      }
    }
    for (std::size_t k = 0; k < split.weights().size(); ++k) {
      if (split.weights()[k] == rows[r]) {
        for (std::size_t o = 0; o < outputs; ++o) {
          g.weight(o, k) = jac(r, o);
        }
      }
    }
  }
  return g;
}

std::vector<std::size_t> rows_for(const ParameterSplit &split, Wrt wrt) {
  std::vector<std::size_t> rows;
  if (wrt == Wrt::InputsAndWeights) {
    rows = split.inputs();
  }
  rows.insert(rows.end(), split.weights().begin(), split.weights().end());
  return rows;
}

} // namespace

ParameterSplit::ParameterSplit(const Circuit &circuit, std::vector<std::size_t> inputs,
                               std::vector<std::size_t> weights)
    : inputs_(std::move(inputs)), weights_(std::move(weights)), total_(circuit.num_parameters()) {
  std::vector<int> hits(total_, 0);
  for (const auto *list : {&inputs_, &weights_}) {
    for (auto idx : *list) {
      if (idx >= total_) {
        throw ValidationError("parameter index " + std::to_string(idx) + " out of range for " +
                              std::to_string(total_) + " circuit parameters");
      }
      ++hits[idx];
    }
  }
  for (std::size_t i = 0; i < total_; ++i) {
    if (hits[i] != 1) {
      throw ValidationError("input/weight split must cover parameter '" +
                            circuit.parameters()[i].name() + "' exactly once");
    }
  }
}

std::vector<double> ParameterSplit::merge(std::span<const double> inputs,
                                          std::span<const double> weights) const {
  if (inputs.size() != inputs_.size()) {
    throw ValidationError("expected " + std::to_string(inputs_.size()) + " inputs, got " +
                          std::to_string(inputs.size()));
  }
  if (weights.size() != weights_.size()) {
    throw ValidationError("expected " + std::to_string(weights_.size()) + " weights, got " +
                          std::to_string(weights.size()));
  }
  std::vector<double> values(total_);
  for (std::size_t k = 0; k < inputs_.size(); ++k) {
    values[inputs_[k]] = inputs[k];
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    values[weights_[k]] = weights[k];
  }
  return values;
}

EstimatorQnn::EstimatorQnn(Circuit circuit, std::vector<PauliObservable> observables,
                           std::vector<std::size_t> input_indices,
                           std::vector<std::size_t> weight_indices)
    : circuit_(std::move(circuit)), observables_(std::move(observables)),
      split_(circuit_, std::move(input_indices), std::move(weight_indices)) {
  if (observables_.empty()) {
    throw ValidationError("EstimatorQnn needs at least one observable");
  }
  for (const auto &o : observables_) {
    if (o.num_qubits() != circuit_.num_qubits()) {
      throw ValidationError("observable width does not match the circuit");
    }
  }
}

std::vector<double> EstimatorQnn::forward(std::span<const double> inputs,
                                          std::span<const double> weights,
                                          const Execution &exec) const {
  const Statevector state = run(qmlkit::bind(circuit_, split_.merge(inputs, weights)));
  std::vector<double> out(observables_.size());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = estimate(state, observables_[o], stream_exec(exec, o));
  }
  return out;
}

QnnGradients EstimatorQnn::backward(std::span<const double> inputs, std::span<const double> weights,
                                    Wrt wrt, const Execution &exec) const {
  const auto values = split_.merge(inputs, weights);
  const auto rows = rows_for(split_, wrt);
  const BoundEvaluator evaluate = [&](const Circuit &bound, std::uint64_t stream) {
    const Statevector state = run(bound);
    std::vector<double> out(observables_.size());
    for (std::size_t o = 0; o < out.size(); ++o) {
      out[o] =
          estimate(state, observables_[o], stream_exec(exec, stream * observables_.size() + o));
    }
    return out;
  };
  if (rows.empty()) {
    return split_jacobian(Matrix(0, output_dim()), rows, split_, output_dim(), wrt);
  }
  const Matrix jac = shift_jacobian(circuit_, values, kDefaultShift, output_dim(), evaluate, rows);
  return split_jacobian(jac, rows, split_, output_dim(), wrt);
}

Interpret identity_interpret() {
  return [](std::uint64_t outcome) { return static_cast<std::size_t>(outcome); };
}

Interpret parity_interpret() {
  return [](std::uint64_t outcome) { return static_cast<std::size_t>(std::popcount(outcome) & 1); };
}

SamplerQnn::SamplerQnn(Circuit circuit, std::vector<std::size_t> input_indices,
                       std::vector<std::size_t> weight_indices, Interpret interpret,
                       std::size_t output_dim)
    : circuit_(std::move(circuit)),
      split_(circuit_, std::move(input_indices), std::move(weight_indices)),
      interpret_(std::move(interpret)), output_dim_(output_dim) {
  if (!interpret_) {
    throw ValidationError("SamplerQnn needs an interpret function");
  }
  if (output_dim_ == 0) {
    throw ValidationError("SamplerQnn output_dim must be positive");
  }
  const std::uint64_t outcomes = std::uint64_t{1} << circuit_.num_qubits();
  class_of_outcome_.resize(outcomes);
  for (std::uint64_t b = 0; b < outcomes; ++b) {
    const std::size_t k = interpret_(b);
    if (k >= output_dim_) {
      throw ValidationError("interpret maps outcome " + to_bitstring(b, circuit_.num_qubits()) +
                            " to " + std::to_string(k) + ", outside [0, " +
                            std::to_string(output_dim_) + ")");
    }
    class_of_outcome_[b] = k;
  }
}

std::vector<double> SamplerQnn::accumulate(const QuasiDistribution &dist) const {
  std::vector<double> out(output_dim_, 0.0);
  for (const auto &[outcome, p] : dist.probabilities()) {
    out[class_of_outcome_[outcome]] += p;
  }
  return out;
}

std::vector<double> SamplerQnn::forward(std::span<const double> inputs,
                                        std::span<const double> weights,
                                        const Execution &exec) const {
  return accumulate(sampler(circuit_, split_.merge(inputs, weights), exec));
}

QnnGradients SamplerQnn::backward(std::span<const double> inputs, std::span<const double> weights,
                                  Wrt wrt, const Execution &exec) const {
  const auto values = split_.merge(inputs, weights);
  const auto rows = rows_for(split_, wrt);
  const BoundEvaluator evaluate = [&](const Circuit &bound, std::uint64_t stream) {
    return accumulate(sample(run(bound), stream_exec(exec, stream)));
  };
  if (rows.empty()) {
    return split_jacobian(Matrix(0, output_dim_), rows, split_, output_dim_, wrt);
  }
  const Matrix jac = shift_jacobian(circuit_, values, kDefaultShift, output_dim_, evaluate, rows);
  return split_jacobian(jac, rows, split_, output_dim_, wrt);
}

} // namespace qmlkit
