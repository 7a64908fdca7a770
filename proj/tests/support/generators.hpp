/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmlkit/bayes.hpp"
#include "qmlkit/circuit.hpp"
#include "qmlkit/matrix.hpp"
#include "qmlkit/random.hpp"
#include "qmlkit/statevector.hpp"

namespace gen {

using qmlkit::AngleExpr;
using qmlkit::Circuit;
using qmlkit::Control;
using qmlkit::Gate;
using qmlkit::Rng;

inline double angle(Rng &rng) { return rng.uniform(-3.2, 3.2); }

/// Random circuit whose parameters all enter as +/-theta on RX/RY/RZ. Constant-angle
/// CRY gates with mixed control values are mixed in on wider registers.
inline Circuit shift_friendly_circuit(Rng &rng, std::size_t max_qubits = 3,
                                      std::size_t max_params = 6) {
  const std::size_t n = 1 + rng.below(max_qubits);
  const std::size_t p = 1 + rng.below(max_params);
  const auto params = qmlkit::make_parameters("t", p);
  Circuit c(n);
  const auto rotation = [&](AngleExpr a, std::size_t q) {
    switch (rng.below(3)) {
    case 0:
      c.rx(std::move(a), q);
      break;
    case 1:
      c.ry(std::move(a), q);
      break;
    default:
      c.rz(std::move(a), q);
    }
  };
  const std::size_t gates = 3 + rng.below(8);
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t q = rng.below(n);
    const auto kind = rng.below(n > 1 ? 6 : 3);
    if (kind == 0) {
      c.h(q);
    } else if (kind == 1) {
      c.x(q);
    } else if (kind == 2) {
      rotation(AngleExpr::linear(params[rng.below(p)], rng.below(2) ? 1.0 : -1.0), q);
    } else {
      const std::size_t t = (q + 1 + rng.below(n - 1)) % n;
      if (kind == 3) {
        c.cx(q, t);
      } else if (kind == 4) {
        c.cz(q, t);
      } else {
        c.append(Gate::cry({{q, static_cast<int>(rng.below(2))}}, angle(rng), t));
      }
    }
  }
  for (const auto &prm : params) {
    if (!c.parameter_index(prm)) {
      rotation(AngleExpr::linear(prm, rng.below(2) ? 1.0 : -1.0), rng.below(n));
    }
  }
  return c;
}

/// Random 1..3-term observable over {I, X, Z}.
inline qmlkit::PauliObservable xz_observable(Rng &rng, std::size_t n) {
  std::vector<qmlkit::PauliTerm> terms;
  const std::size_t count = 1 + rng.below(3);
  for (std::size_t t = 0; t < count; ++t) {
    std::string s;
    for (std::size_t q = 0; q < n; ++q) {
      s += "IXZ"[rng.below(3)];
    }
    terms.push_back({rng.uniform(-1.0, 1.0), s});
  }
  return qmlkit::PauliObservable(std::move(terms));
}

inline std::vector<std::pair<double, std::string>> terms_of(const qmlkit::PauliObservable &o) {
  std::vector<std::pair<double, std::string>> out;
  for (const auto &t : o.terms()) {
    out.emplace_back(t.coefficient, t.paulis);
  }
  return out;
}

/// Bound circuit over the full gate set, multi-controlled CRY included.
inline Circuit constant_circuit(Rng &rng, std::size_t n, std::size_t gates) {
  Circuit c(n);
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t q = rng.below(n);
    const auto kind = rng.below(n > 1 ? 8 : 5);
    switch (kind) {
    case 0:
      c.h(q);
      break;
    case 1:
      c.x(q);
      break;
    case 2:
      c.rx(angle(rng), q);
      break;
    case 3:
      c.ry(angle(rng), q);
      break;
    case 4:
      c.rz(angle(rng), q);
      break;
    default: {
      const std::size_t t = (q + 1 + rng.below(n - 1)) % n;
      if (kind == 5) {
        c.cx(q, t);
      } else if (kind == 6) {
        c.cz(q, t);
      } else {
        std::vector<Control> controls;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != t && (k == q || rng.below(2))) {
            controls.push_back({k, static_cast<int>(rng.below(2))});
          }
        }
        c.append(Gate::cry(controls, angle(rng), t));
      }
    }
    }
  }
  return c;
}

inline std::vector<double> uniform_values(Rng &rng, std::size_t count, double lo = -3.2,
                                          double hi = 3.2) {
  std::vector<double> v(count);
  for (auto &x : v) {
    x = rng.uniform(lo, hi);
  }
  return v;
}

inline qmlkit::Matrix uniform_matrix(Rng &rng, std::size_t rows, std::size_t cols, double lo,
                                     double hi) {
  qmlkit::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.uniform(lo, hi);
    }
  }
  return m;
}

/// +/-1 labels with both classes present.
inline std::vector<double> mixed_labels(Rng &rng, std::size_t m) {
  std::vector<double> y(m);
  for (;;) {
    for (auto &v : y) {
      v = rng.below(2) ? 1.0 : -1.0;
    }
    bool pos = false, neg = false;
    for (double v : y) {
      (v > 0 ? pos : neg) = true;
    }
    if (pos && neg) {
      return y;
    }
  }
}

/// Random network of `n` nodes, each with up to `max_parents` earlier parents.
inline qmlkit::BayesianNetwork network(Rng &rng, std::size_t n, std::size_t max_parents = 3) {
  qmlkit::BayesianNetwork bn;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> parents;
    for (std::size_t j = 0; j < i; ++j) {
      if (parents.size() < max_parents && rng.below(2)) {
        parents.push_back("n" + std::to_string(j));
      }
    }
    std::vector<double> cpt(std::size_t{1} << parents.size());
    for (auto &p : cpt) {
      p = rng.uniform();
    }
    bn.add_node("n" + std::to_string(i), parents, cpt);
  }
  return bn;
}

} // namespace gen
