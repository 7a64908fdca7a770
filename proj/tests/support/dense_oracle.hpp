/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

// Reference simulator for tests: every gate becomes a full 2^n x 2^n matrix
// built from Kronecker products, independent of the library's in-place kernels.

#include <cmath>
#include <complex>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "qmlkit/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat single(char p) {
  Mat m(2, 2);
  switch (p) {
  case 'X':
    m << 0, 1, 1, 0;
    break;
  case 'Y':
    m << 0, cd(0, -1), cd(0, 1), 0;
    break;
  case 'Z':
    m << 1, 0, 0, -1;
    break;
  case 'H':
    m << 1, 1, 1, -1;
    m /= std::sqrt(2.0);
    break;
  default:
    m = Mat::Identity(2, 2);
  }
  return m;
}

/// exp(-i theta P / 2)
inline Mat rotation(char p, double theta) {
  return std::cos(theta / 2) * Mat::Identity(2, 2) - cd(0, 1) * std::sin(theta / 2) * single(p);
}

/// `ops[q]` acts on qubit q; qubit 0 is the least significant index bit, so it is the
/// rightmost Kronecker factor.
inline Mat on_qubits(const std::vector<Mat> &ops) {
  Mat out = Mat::Identity(1, 1);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    out = kron(out, *it);
  }
  return out;
}

inline Mat embed(const Mat &u, std::size_t target, std::size_t n) {
  std::vector<Mat> ops(n, Mat::Identity(2, 2));
  ops[target] = u;
  return on_qubits(ops);
}

/// Pauli string written qubit 0 first.
inline Mat pauli(const std::string &s) {
  std::vector<Mat> ops;
  for (char c : s) {
    ops.push_back(single(c));
  }
  return on_qubits(ops);
}

inline double angle_of(const qmlkit::Circuit &c, const qmlkit::AngleExpr &a,
                       std::span<const double> values) {
  double v = a.coefficient();
  for (const auto &f : a.factors()) {
    v *= f.offset + f.scale * values[*c.parameter_index(f.param)];
  }
  return v;
}

inline Mat gate_matrix(const qmlkit::Circuit &c, const qmlkit::Gate &g,
                       std::span<const double> values) {
  using qmlkit::GateKind;
  const std::size_t n = c.num_qubits();
  Mat u;
  switch (g.kind) {
  case GateKind::H:
    u = single('H');
    break;
  case GateKind::X:
  case GateKind::CX:
    u = single('X');
    break;
  case GateKind::CZ:
    u = single('Z');
    break;
  case GateKind::RX:
    u = rotation('X', angle_of(c, *g.angle, values));
    break;
  case GateKind::RY:
  case GateKind::CRY:
    u = rotation('Y', angle_of(c, *g.angle, values));
    break;
  case GateKind::RZ:
    u = rotation('Z', angle_of(c, *g.angle, values));
    break;
  }
  const Mat t = embed(u, g.targets[0], n);
  if (g.controls.empty()) {
    return t;
  }
  // (I - P) + P T, with P the projector onto the required control values.
  std::vector<Mat> proj(n, Mat::Identity(2, 2));
  for (const auto &ctl : g.controls) {
    Mat p = Mat::Zero(2, 2);
    p(ctl.value, ctl.value) = 1;
    proj[ctl.qubit] = p;
  }
  const Mat P = on_qubits(proj);
  const auto dim = static_cast<Eigen::Index>(1) << n;
  return Mat::Identity(dim, dim) - P + P * t;
}

inline Mat unitary(const qmlkit::Circuit &c, std::span<const double> values) {
  const auto dim = static_cast<Eigen::Index>(1) << c.num_qubits();
  Mat u = Mat::Identity(dim, dim);
  for (const auto &g : c.gates()) {
    u = gate_matrix(c, g, values) * u;
  }
  return u;
}

inline Vec state(const qmlkit::Circuit &c, std::span<const double> values) {
  return unitary(c, values).col(0);
}

inline double fidelity(const Vec &a, const Vec &b) { return std::norm(a.dot(b)); }

/// Terms as (coefficient, string) pairs.
inline double expectation(const Vec &psi,
                          const std::vector<std::pair<double, std::string>> &terms) {
  double acc = 0.0;
  for (const auto &[c, s] : terms) {
    acc += c * psi.dot(pauli(s) * psi).real();
  }
  return acc;
}

} // namespace oracle
