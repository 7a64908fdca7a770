/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "qmlkit/error.hpp"
#include "qmlkit/kernels.hpp"
#include "support/dense_oracle.hpp"
#include "support/generators.hpp"

using namespace qmlkit;
using std::numbers::pi;

namespace {

Circuit ry_x() {
  Circuit c(1);
  c.ry(Parameter("x"), 0);
  return c;
}

Matrix column(std::vector<double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    m(i, 0) = v[i];
  }
  return m;
}

double min_eigenvalue(const KernelMatrix &k) {
  Eigen::MatrixXd m(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k(i, j);
    }
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

KernelMatrix from(std::vector<std::vector<double>> rows) {
  KernelMatrix k;
  k.entries = Matrix::from_rows(rows);
  k.symmetric = true;
  return k;
}

/// Feature map over `d` inputs: RY then RZ per input qubit, a CX chain, another data layer.
Circuit layered_map(std::size_t d) {
  const auto x = make_parameters("x", d);
  Circuit c(d);
  for (std::size_t q = 0; q < d; ++q) {
    c.ry(x[q], q).rz(AngleExpr::linear(x[q], 0.5), q);
  }
  for (std::size_t q = 0; q + 1 < d; ++q) {
    c.cx(q, q + 1);
  }
  for (std::size_t q = 0; q < d; ++q) {
    c.rx(AngleExpr::linear(x[(q + 1) % d], 1.3), q);
  }
  return c;
}

} // namespace

TEST_CASE("kernel matrix examples") {
  const auto c = ry_x();
  const auto one = kernel_matrix(column({0.4}), c);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == 1.0);
  CHECK(std::abs(kernel_matrix(column({0.0, pi}), c)(0, 1)) < 1e-12);
  CHECK(std::abs(kernel_matrix(column({0.0, pi / 2}), c)(0, 1) - 0.5) < 1e-12);
  CHECK_THROWS_AS(kernel_matrix(Matrix(2, 2), c), ValidationError);
  CHECK_THROWS_AS(kernel_matrix(column({0.0}), Matrix(1, 3), c), ValidationError);
}

TEST_CASE("gram matrices are symmetric, unit diagonal, PSD and match the oracle") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t m = 1 + rng.below(8);
    const Circuit map = trial % 2 == 0 ? zz_feature_map(d, 2) : layered_map(d);
    const Matrix x = gen::uniform_matrix(rng, m, d, -pi, pi);
    const auto k = kernel_matrix(x, map);
    REQUIRE(k.rows() == m);
    CHECK(k.symmetric);
    std::vector<oracle::Vec> states;
    for (std::size_t i = 0; i < m; ++i) {
      states.push_back(oracle::state(map, x.row(i)));
    }
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(k(i, i) == 1.0);
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(k(i, j) == k(j, i));
        CHECK(k(i, j) >= 0.0);
        CHECK(k(i, j) <= 1.0);
        CHECK(std::abs(k(i, j) - oracle::fidelity(states[j], states[i])) < 1e-10);
      }
    }
    CHECK(min_eigenvalue(k) >= -1e-8);
  }
}

TEST_CASE("cross kernels match the gram matrix entries") {
  gen::Rng rng(42);
  const Circuit map = zz_feature_map(2, 1);
  const Matrix x = gen::uniform_matrix(rng, 4, 2, -pi, pi);
  const Matrix y = gen::uniform_matrix(rng, 3, 2, -pi, pi);
  const auto cross = kernel_matrix(x, y, map);
  CHECK(cross.rows() == 4);
  CHECK(cross.cols() == 3);
  CHECK_FALSE(cross.symmetric);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto ref = oracle::fidelity(oracle::state(map, y.row(j)), oracle::state(map, x.row(i)));
      CHECK(std::abs(cross(i, j) - ref) < 1e-10);
    }
  }
}

TEST_CASE("shot-mode gram matrices are symmetric and independent of evaluation order") {
  gen::Rng rng(43);
  const Circuit map = zz_feature_map(2, 1);
  const Matrix x = gen::uniform_matrix(rng, 5, 2, -pi, pi);
  const auto exec = Execution::sampled(256, 99);
  const auto k = kernel_matrix(x, map, exec);
  CHECK(k.entries == kernel_matrix(x, map, exec).entries);

  const auto spec = TrainableKernelSpec::data_only(map);
  const KernelEvaluator eval(spec, {}, x, x, exec);
  for (std::size_t i = 5; i-- > 0;) {
    for (std::size_t j = 5; j-- > i;) {
      CHECK(eval.entry(i, j) == k(i, j));
      CHECK(k(j, i) == k(i, j));
    }
  }
  // The diagonal is sampled in shot mode, so it is a count over 256 shots.
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(k(i, i) * 256 - std::round(k(i, i) * 256)) < 1e-9);
  }
}

TEST_CASE("trainable kernel examples") {
  gen::Rng rng(44);
  const Circuit map = zz_feature_map(2, 2);
  const Matrix x = gen::uniform_matrix(rng, 4, 2, -pi, pi);
  const auto spec = TrainableKernelSpec::data_only(map);
  CHECK(trainable_kernel_matrix(spec, {}, x).entries == kernel_matrix(x, map).entries);

  // RY(x + w) is realised as RY(x) RY(w).
  const Parameter px("x"), pw("w");
  Circuit shifted(1);
  shifted.ry(px, 0).ry(pw, 0);
  const TrainableKernelSpec tspec(shifted, {0}, {1});
  const std::vector<double> w0{0.0};
  CHECK(std::abs(trainable_kernel_matrix(tspec, w0, column({0.0, pi}))(0, 1)) < 1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> w{gen::angle(rng)};
    const auto k = trainable_kernel_matrix(tspec, w, column({0.0, pi, 1.0}));
    CHECK(k(0, 0) == 1.0);
    CHECK(k(2, 2) == 1.0);
    CHECK(std::abs(k(0, 1)) < 1e-12);
  }

  CHECK_THROWS_AS(trainable_kernel_matrix(tspec, {}, column({0.0})), ValidationError);
  CHECK_THROWS_AS(TrainableKernelSpec(shifted, {0}, {0}), ValidationError);
  CHECK_THROWS_AS(TrainableKernelSpec(shifted, {0}, {}), ValidationError);
  CHECK_THROWS_AS(TrainableKernelSpec(shifted, {0}, {2}), ValidationError);
}

TEST_CASE("interleaved trainable parameters match a pre-bound feature map") {
  gen::Rng rng(45);
  const auto p = make_parameters("p", 4);
  Circuit c(2);
  c.ry(p[0], 0).rz(p[1], 0).ry(p[2], 1).cx(0, 1).rx(
      AngleExpr(1.0, {{0.0, 1.0, p[3]}, {1.0, 0.5, p[0]}}), 1);
  // Data: p0, p2; trainable: p1, p3.
  const TrainableKernelSpec spec(c, {0, 2}, {1, 3});
  const Matrix x = gen::uniform_matrix(rng, 4, 2, -pi, pi);
  const std::vector<double> w{0.3, -1.1};
  const auto k = trainable_kernel_matrix(spec, w, x);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const std::vector<double> vi{x(i, 0), w[0], x(i, 1), w[1]};
      const std::vector<double> vj{x(j, 0), w[0], x(j, 1), w[1]};
      CHECK(std::abs(k(i, j) - oracle::fidelity(oracle::state(c, vj), oracle::state(c, vi))) <
            1e-10);
    }
  }
}

TEST_CASE("alignment examples") {
  const std::vector<double> same{1.0, 1.0, 1.0};
  CHECK(kernel_alignment(from({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), same) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> y{1.0, -1.0};
  CHECK(std::abs(kernel_alignment(from({{1, 0}, {0, 1}}), y) - 1 / std::sqrt(2.0)) < 1e-14);

  gen::Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + rng.below(6);
    const auto k = kernel_matrix(gen::uniform_matrix(rng, m, 2, -pi, pi), zz_feature_map(2, 1));
    auto labels = gen::mixed_labels(rng, m);
    const double a = kernel_alignment(k, labels);
    for (auto &v : labels) {
      v = -v;
    }
    CHECK(kernel_alignment(k, labels) == a);
    CHECK(a >= -1.0);
    CHECK(a <= 1.0);
  }
  CHECK_THROWS_AS(kernel_alignment(from({{1, 0}, {0, 1}}), same), ValidationError);
}

TEST_CASE("kernel training") {
  SUBCASE("nothing to train") {
    const auto spec = TrainableKernelSpec::data_only(ry_x());
    const std::vector<double> y{1.0, -1.0};
    const auto r = train_kernel(spec, column({0.0, pi}), y, {}, default_kernel_training_config());
    CHECK(r.trainable.empty());
    CHECK(r.history.size() == 1);
  }

  SUBCASE("product angle RY(x w) improves alignment") {
    const Parameter px("x"), pw("w");
    Circuit c(1);
    c.ry(AngleExpr(1.0, {{0.0, 1.0, px}, {0.0, 1.0, pw}}), 0);
    const TrainableKernelSpec spec(c, {0}, {1});
    const Matrix x = column({0.0, pi});
    const std::vector<double> y{1.0, -1.0};
    auto config = default_kernel_training_config();
    config.seed = 17;
    const std::vector<double> w0{0.1};
    const auto r = train_kernel(spec, x, y, w0, config);
    REQUIRE(r.trainable.size() == 1);
    const double before = kernel_alignment(trainable_kernel_matrix(spec, w0, x), y);
    const double after = kernel_alignment(trainable_kernel_matrix(spec, r.trainable, x), y);
    CHECK(after > before);
    CHECK(r.best_alignment == doctest::Approx(after).epsilon(1e-12));
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      CHECK(r.history[i] <= r.history[i - 1]);
    }
    const auto again = train_kernel(spec, x, y, w0, config);
    CHECK(again.history == r.history);
    CHECK(again.trainable == r.trainable);
  }

  SUBCASE("labels must be +/-1") {
    const auto spec = TrainableKernelSpec::data_only(ry_x());
    const std::vector<double> y{1.0, 0.0};
    CHECK_THROWS_AS(train_kernel(spec, column({0.0, pi}), y, {}, default_kernel_training_config()),
                    ValidationError);
  }
}
