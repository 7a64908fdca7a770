/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/circuit.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numbers>
#include <utility>

#include "qmlkit/error.hpp"

namespace qmlkit {

namespace {

std::atomic<std::uint64_t> next_parameter_id{1};

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kGateNames{{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::CX, "CX"},
    {GateKind::CZ, "CZ"},
    {GateKind::CRY, "CRY"},
}};

void validate_gate(const Gate &gate, std::size_t num_qubits) {
  const auto name = std::string(to_string(gate.kind));
  if (gate.targets.size() != 1) {
    throw ValidationError(name + " takes exactly one target qubit");
  }
  if (is_controlled(gate.kind) && gate.controls.empty()) {
    throw ValidationError(name + " requires at least one control qubit");
  }
  if (!is_controlled(gate.kind) && !gate.controls.empty()) {
    throw ValidationError(name + " does not take control qubits");
  }
  if (is_rotation(gate.kind) != gate.angle.has_value()) {
    throw ValidationError(is_rotation(gate.kind) ? name + " requires an angle"
                                                 : name + " does not take an angle");
  }

  std::vector<std::size_t> used = gate.targets;
  for (const auto &c : gate.controls) {
    if (c.value != 0 && c.value != 1) {
      throw ValidationError(name + " control value must be 0 or 1");
    }
    used.push_back(c.qubit);
  }
  for (auto q : used) {
    if (q >= num_qubits) {
      throw ValidationError(name + " qubit index " + std::to_string(q) + " out of range for a " +
                            std::to_string(num_qubits) + "-qubit circuit");
    }
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
    throw ValidationError(name + " uses the same qubit more than once");
  }
}

void add_parameter(std::vector<Parameter> &params, const Parameter &param) {
  for (const auto &p : params) {
    if (p.name() == param.name()) {
      if (p != param) {
        throw ValidationError("parameter name collision: '" + param.name() +
                              "' already names a different parameter");
      }
      return;
    }
  }
  params.push_back(param);
}

} // namespace

Parameter::Parameter(std::string name) : name_(std::move(name)), id_(next_parameter_id++) {
  if (name_.empty()) {
    throw ValidationError("parameter name must not be empty");
  }
}

std::vector<Parameter> make_parameters(std::string_view prefix, std::size_t count) {
  std::vector<Parameter> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(std::string(prefix) + std::to_string(i));
  }
  return out;
}

double AngleExpr::constant_value() const {
  if (!is_constant()) {
    throw ValidationError("angle references unbound parameter '" + factors_.front().param.name() +
                          "'");
  }
  return coefficient_;
}

std::string_view to_string(GateKind kind) {
  for (const auto &[k, name] : kGateNames) {
    if (k == kind) {
      return name;
    }
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  for (const auto &[k, n] : kGateNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::CRY;
}

bool is_controlled(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::CRY;
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) {
    throw ValidationError("circuit needs at least one qubit");
  }
}

std::optional<std::size_t> Circuit::parameter_index(std::string_view name) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (parameters_[i].name() == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> Circuit::parameter_index(const Parameter &param) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (parameters_[i].id() == param.id()) {
      return i;
    }
  }
  return std::nullopt;
}

void Circuit::register_parameter(const Parameter &param) { add_parameter(parameters_, param); }

void Circuit::declare(const Parameter &param) { register_parameter(param); }

Circuit &Circuit::append(Gate gate) {
  validate_gate(gate, num_qubits_);
  auto params = parameters_;
  if (gate.angle) {
    for (const auto &f : gate.angle->factors()) {
      add_parameter(params, f.param);
    }
  }
  parameters_ = std::move(params);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit Circuit::with_angle(std::size_t index, AngleExpr angle) const {
  if (index >= gates_.size() || !gates_[index].angle) {
    throw ValidationError("gate " + std::to_string(index) + " carries no angle");
  }
  Circuit out(num_qubits_);
  out.gates_ = gates_;
  out.gates_[index].angle = std::move(angle);
  for (const auto &f : out.gates_[index].angle->factors()) {
    if (!parameter_index(f.param)) {
      out.parameters_.push_back(f.param);
    }
  }
  std::vector<Parameter> kept;
  for (const auto &p : parameters_) {
    const bool referenced = std::any_of(out.gates_.begin(), out.gates_.end(), [&](const Gate &g) {
      return g.angle && std::any_of(g.angle->factors().begin(), g.angle->factors().end(),
                                    [&](const AffineFactor &f) { return f.param == p; });
    });
    if (referenced) {
      kept.push_back(p);
    }
  }
  kept.insert(kept.end(), out.parameters_.begin(), out.parameters_.end());
  out.parameters_ = std::move(kept);
  return out;
}

Circuit append_gate(const Circuit &circuit, Gate gate) {
  Circuit out = circuit;
  out.append(std::move(gate));
  return out;
}

Circuit bind(const Circuit &circuit, std::span<const double> values) {
  const auto &params = circuit.parameters();
  if (values.size() != params.size()) {
    throw ValidationError("bind expects " + std::to_string(params.size()) + " values, got " +
                          std::to_string(values.size()));
  }
  auto lookup = [&](const Parameter &p) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].id() == p.id()) {
        return values[i];
      }
    }
    throw ValidationError("parameter '" + p.name() + "' is not registered in the circuit");
  };

  Circuit out(circuit.num_qubits());
  for (const auto &g : circuit.gates()) {
    Gate bound = g;
    if (bound.angle) {
      bound.angle = AngleExpr(g.angle->evaluate(lookup));
    }
    out.append(std::move(bound));
  }
  return out;
}

Circuit inverse(const Circuit &circuit) {
  Circuit out(circuit.num_qubits());
  for (const auto &p : circuit.parameters()) {
    out.declare(p);
  }
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    Gate g = *it;
    if (g.angle) {
      g.angle = g.angle->negated();
    }
    out.append(std::move(g));
  }
  return out;
}

Circuit compose(const Circuit &a, const Circuit &b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("cannot compose a " + std::to_string(a.num_qubits()) +
                          "-qubit circuit with a " + std::to_string(b.num_qubits()) +
                          "-qubit circuit");
  }
  Circuit out(a.num_qubits());
  for (const auto &p : a.parameters()) {
    out.declare(p);
  }
  for (const auto &p : b.parameters()) {
    out.declare(p);
  }
  for (const auto &g : a.gates()) {
    out.append(g);
  }
  for (const auto &g : b.gates()) {
    out.append(g);
  }
  return out;
}

Circuit zz_feature_map(std::size_t num_qubits, std::size_t reps, std::string_view prefix) {
  if (reps == 0) {
    throw ValidationError("zz_feature_map needs reps >= 1");
  }
  constexpr double pi = std::numbers::pi;
  const auto x = make_parameters(prefix, num_qubits);
  Circuit c(num_qubits);
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t q = 0; q < num_qubits; ++q) {
      c.h(q);
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
      c.rz(AngleExpr::linear(x[q], 2.0), q);
    }
    for (std::size_t q = 0; q + 1 < num_qubits; ++q) {
      c.cx(q, q + 1);
      c.rz(AngleExpr(2.0, {{pi, -1.0, x[q]}, {pi, -1.0, x[q + 1]}}), q + 1);
      c.cx(q, q + 1);
    }
  }
  return c;
}

Circuit angle_feature_map(std::size_t num_qubits, std::string_view prefix) {
  const auto x = make_parameters(prefix, num_qubits);
  Circuit c(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    c.ry(x[q], q);
  }
  return c;
}

Circuit real_amplitudes(std::size_t num_qubits, std::size_t reps, std::string_view prefix) {
  if (reps == 0) {
    throw ValidationError("real_amplitudes needs reps >= 1");
  }
  const auto w = make_parameters(prefix, num_qubits * (reps + 1));
  Circuit c(num_qubits);
  std::size_t next = 0;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    c.ry(w[next++], q);
  }
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t q = 0; q + 1 < num_qubits; ++q) {
      c.cx(q, q + 1);
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
      c.ry(w[next++], q);
    }
  }
  return c;
}

} // namespace qmlkit
