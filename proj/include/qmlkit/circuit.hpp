/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmlkit {

/**
 * A named circuit parameter.
 *
 * Each constructed Parameter carries a process-unique id, so two parameters
 * that happen to share a name are still distinguishable. Copies share the id.
 * Within one circuit names are unique; the parameter's index is its position
 * in `Circuit::parameters()`.
 */
class Parameter {
public:
  explicit Parameter(std::string name);

  const std::string &name() const noexcept { return name_; }
  std::uint64_t id() const noexcept { return id_; }

  friend bool operator==(const Parameter &, const Parameter &) = default;

private:
  std::string name_;
  std::uint64_t id_;
};

/// `count` fresh parameters named `prefix0`, `prefix1`, ...
std::vector<Parameter> make_parameters(std::string_view prefix, std::size_t count);

/// One affine term `offset + scale * param` of an AngleExpr product.
struct AffineFactor {
  double offset = 0.0;
  double scale = 1.0;
  Parameter param;

  friend bool operator==(const AffineFactor &, const AffineFactor &) = default;
};

/**
 * Rotation angle `coefficient * prod_k (offset_k + scale_k * param_k)`.
 *
 * An empty factor list is a constant angle. This form covers plain linear
 * rotations (`c * theta`) and the pairwise products used by the ZZ feature map.
 */
class AngleExpr {
public:
  AngleExpr() = default;
  AngleExpr(double constant) : coefficient_(constant) {} // NOLINT(implicit)
  AngleExpr(const Parameter &param)
      : coefficient_(1.0), factors_{{0.0, 1.0, param}} {} // NOLINT(implicit)
  AngleExpr(double coefficient, std::vector<AffineFactor> factors)
      : coefficient_(coefficient), factors_(std::move(factors)) {}

  static AngleExpr linear(const Parameter &param, double coefficient) {
    return {coefficient, {{0.0, 1.0, param}}};
  }

  double coefficient() const noexcept { return coefficient_; }
  const std::vector<AffineFactor> &factors() const noexcept { return factors_; }
  bool is_constant() const noexcept { return factors_.empty(); }

  /// Value of a constant expression. Throws if any factor remains.
  double constant_value() const;

  /// `lookup` maps each referenced Parameter to its value.
  template <typename Lookup> double evaluate(Lookup &&lookup) const {
    double value = coefficient_;
    for (const auto &f : factors_) {
      value *= f.offset + f.scale * lookup(f.param);
    }
    return value;
  }

  AngleExpr negated() const { return {-coefficient_, factors_}; }

  friend bool operator==(const AngleExpr &, const AngleExpr &) = default;

private:
  double coefficient_ = 0.0;
  std::vector<AffineFactor> factors_;
};

enum class GateKind { H, X, RX, RY, RZ, CX, CZ, CRY };

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);
bool is_rotation(GateKind kind);
bool is_controlled(GateKind kind);

/// Control qubit together with the bit value it must hold for the gate to fire.
struct Control {
  std::size_t qubit = 0;
  int value = 1;

  friend bool operator==(const Control &, const Control &) = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<std::size_t> targets;
  std::vector<Control> controls;
  std::optional<AngleExpr> angle;

  static Gate h(std::size_t q) { return {GateKind::H, {q}, {}, std::nullopt}; }
  static Gate x(std::size_t q) { return {GateKind::X, {q}, {}, std::nullopt}; }
  static Gate rx(AngleExpr a, std::size_t q) { return {GateKind::RX, {q}, {}, std::move(a)}; }
  static Gate ry(AngleExpr a, std::size_t q) { return {GateKind::RY, {q}, {}, std::move(a)}; }
  static Gate rz(AngleExpr a, std::size_t q) { return {GateKind::RZ, {q}, {}, std::move(a)}; }
  static Gate cx(std::size_t c, std::size_t t) {
    return {GateKind::CX, {t}, {{c, 1}}, std::nullopt};
  }
  static Gate cz(std::size_t c, std::size_t t) {
    return {GateKind::CZ, {t}, {{c, 1}}, std::nullopt};
  }
  /// RY on `t` that fires only when every control holds its required bit.
  static Gate cry(std::vector<Control> controls, AngleExpr a, std::size_t t) {
    return {GateKind::CRY, {t}, std::move(controls), std::move(a)};
  }

  friend bool operator==(const Gate &, const Gate &) = default;
};

/**
 * Ordered gate list over `num_qubits` qubits plus the parameters its angles
 * reference, in registration order (first appearance). Bind vectors follow
 * that order.
 *
 * The builder methods mutate in place; the free functions below
 * (`append_gate`, `bind`, `inverse`, `compose`) return new circuits and leave
 * their inputs untouched.
 */
class Circuit {
public:
  explicit Circuit(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate> &gates() const noexcept { return gates_; }
  const std::vector<Parameter> &parameters() const noexcept { return parameters_; }
  std::size_t num_parameters() const noexcept { return parameters_.size(); }

  std::optional<std::size_t> parameter_index(std::string_view name) const;
  std::optional<std::size_t> parameter_index(const Parameter &param) const;

  /// Validates and appends; registers any parameters not yet known.
  Circuit &append(Gate gate);

  Circuit &h(std::size_t q) { return append(Gate::h(q)); }
  Circuit &x(std::size_t q) { return append(Gate::x(q)); }
  Circuit &rx(AngleExpr a, std::size_t q) { return append(Gate::rx(std::move(a), q)); }
  Circuit &ry(AngleExpr a, std::size_t q) { return append(Gate::ry(std::move(a), q)); }
  Circuit &rz(AngleExpr a, std::size_t q) { return append(Gate::rz(std::move(a), q)); }
  Circuit &cx(std::size_t c, std::size_t t) { return append(Gate::cx(c, t)); }
  Circuit &cz(std::size_t c, std::size_t t) { return append(Gate::cz(c, t)); }

  /// Registers a parameter even if no gate references it yet (used by JSON loading
  /// to preserve the declared order).
  void declare(const Parameter &param);

  /// Copy with gate `index` carrying a new angle. Parameters no longer referenced
  /// are dropped; the order of the rest is kept.
  Circuit with_angle(std::size_t index, AngleExpr angle) const;

  friend bool operator==(const Circuit &, const Circuit &) = default;

private:
  void register_parameter(const Parameter &param);

  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::vector<Parameter> parameters_;
};

Circuit append_gate(const Circuit &circuit, Gate gate);

/// Collapses every angle to a constant. `values` follows `circuit.parameters()`.
Circuit bind(const Circuit &circuit, std::span<const double> values);

/// Gates reversed, rotation angles negated. Parameters keep their order.
Circuit inverse(const Circuit &circuit);

/// Gates of `a` then gates of `b`. A name present in both must refer to the same Parameter.
Circuit compose(const Circuit &a, const Circuit &b);

/**
 * ZZ-style data encoding: per repetition, H on every qubit, RZ(2 x_i) on qubit i,
 * then for each neighbour pair (i, i+1) the block CX(i, i+1), RZ(2 (pi - x_i)(pi - x_j))
 * on i+1, CX(i, i+1). The n data parameters are reused by every repetition.
 */
Circuit zz_feature_map(std::size_t num_qubits, std::size_t reps, std::string_view prefix = "x");

/// RY(x_i) on qubit i; the plain angle encoding.
Circuit angle_feature_map(std::size_t num_qubits, std::string_view prefix = "x");

/// RY layer, then `reps` times a linear CX chain followed by a fresh RY layer.
Circuit real_amplitudes(std::size_t num_qubits, std::size_t reps, std::string_view prefix = "w");

} // namespace qmlkit
