/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmlkit/circuit.hpp"
#include "qmlkit/error.hpp"
#include "qmlkit/serialization.hpp"
#include "qmlkit/statevector.hpp"
#include "support/generators.hpp"

using namespace qmlkit;
using std::numbers::pi;

TEST_CASE("append registers parameters in first-appearance order") {
  Circuit c(1);
  c.h(0);
  CHECK(c.gates().size() == 1);
  CHECK(c.num_parameters() == 0);

  const Parameter theta("theta");
  Circuit r(1);
  r.ry(theta, 0);
  REQUIRE(r.num_parameters() == 1);
  CHECK(r.parameters()[0] == theta);

  const Parameter a("a"), b("b");
  Circuit two(2);
  two.rx(b, 0).ry(a, 1).rz(b, 1);
  CHECK(two.parameters() == std::vector<Parameter>{b, a});
  CHECK(two.parameter_index("a") == 1);
  CHECK(two.parameter_index(b) == 0);
}

TEST_CASE("append validates qubits, controls and angles") {
  Circuit c(2);
  CHECK_THROWS_AS(c.cx(0, 0), ValidationError);
  CHECK_THROWS_AS(c.h(2), ValidationError);
  CHECK_THROWS_AS(c.append(Gate{GateKind::H, {0}, {}, AngleExpr(1.0)}), ValidationError);
  CHECK_THROWS_AS(c.append(Gate{GateKind::RY, {0}, {}, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(c.append(Gate{GateKind::CX, {0}, {}, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(c.append(Gate{GateKind::X, {0}, {{1, 1}}, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(c.append(Gate::cry({{1, 2}}, 0.1, 0)), ValidationError);
  CHECK_THROWS_AS(c.append(Gate{GateKind::H, {0, 1}, {}, std::nullopt}), ValidationError);
  CHECK(c.gates().empty());
  CHECK_THROWS_AS(Circuit(0), ValidationError);
  CHECK_THROWS_AS(Parameter(""), ValidationError);
}

TEST_CASE("distinct parameters may not share a name in one circuit") {
  Circuit c(1);
  c.ry(Parameter("p"), 0);
  CHECK_THROWS_AS(c.rx(Parameter("p"), 0), ValidationError);
  CHECK(c.gates().size() == 1);
  CHECK(c.num_parameters() == 1);
}

TEST_CASE("bind collapses angles to constants") {
  const Parameter theta("theta");
  Circuit c(1);
  c.ry(theta, 0);
  const std::vector<double> v{pi / 2};
  const Circuit b = qmlkit::bind(c, v);
  CHECK(b.num_parameters() == 0);
  REQUIRE(b.gates()[0].angle->is_constant());
  CHECK(b.gates()[0].angle->constant_value() == pi / 2);
  CHECK(c.num_parameters() == 1);
  CHECK_FALSE(c.gates()[0].angle->is_constant());

  Circuit plain(2);
  plain.h(0).cx(0, 1);
  CHECK(qmlkit::bind(plain, {}) == plain);

  const auto x = make_parameters("x", 2);
  Circuit zz(2);
  zz.rz(AngleExpr(2.0, {{pi, -1.0, x[0]}, {pi, -1.0, x[1]}}), 1);
  const std::vector<double> xv{pi, 0.0};
  CHECK(qmlkit::bind(zz, xv).gates()[0].angle->constant_value() == 0.0);

  CHECK_THROWS_AS(qmlkit::bind(c, {}), ValidationError);
  const std::vector<double> too_many{1.0, 2.0};
  CHECK_THROWS_AS(qmlkit::bind(c, too_many), ValidationError);
}

TEST_CASE("angle evaluation is linear in the coefficient and order-free in factors") {
  gen::Rng rng(5);
  const auto p = make_parameters("p", 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AffineFactor> f;
    for (const auto &prm : p) {
      f.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2), prm});
    }
    const auto vals = gen::uniform_values(rng, 3);
    const auto lookup = [&](const Parameter &q) {
      return vals[static_cast<std::size_t>(std::find(p.begin(), p.end(), q) - p.begin())];
    };
    const double c = rng.uniform(-3, 3);
    const double base = AngleExpr(1.0, f).evaluate(lookup);
    CHECK(AngleExpr(c, f).evaluate(lookup) == doctest::Approx(c * base).epsilon(1e-12));
    auto shuffled = f;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(AngleExpr(c, shuffled).evaluate(lookup) ==
          doctest::Approx(AngleExpr(c, f).evaluate(lookup)).epsilon(1e-12));
  }
}

TEST_CASE("inverse reverses gates and negates angles") {
  Circuit h(1);
  h.h(0);
  CHECK(inverse(h) == h);

  Circuit r(1);
  r.ry(0.3, 0);
  CHECK(inverse(r).gates()[0].angle->constant_value() == -0.3);

  Circuit hc(2);
  hc.h(0).cx(0, 1);
  Circuit expected(2);
  expected.cx(0, 1).h(0);
  CHECK(inverse(hc) == expected);

  gen::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = gen::shift_friendly_circuit(rng);
    CHECK(inverse(inverse(c)) == c);
    CHECK(inverse(c).parameters() == c.parameters());
  }
}

TEST_CASE("circuit followed by its inverse is the identity on basis states") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const Circuit c = gen::constant_circuit(rng, n, 12);
    const Circuit round = compose(c, inverse(c));
    for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
      const auto out = run(round, Statevector::basis_state(n, b));
      for (std::size_t i = 0; i < out.dimension(); ++i) {
        CHECK(std::abs(out[i] - Amplitude(i == b ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("compose concatenates gates and parameters") {
  Circuit c(2);
  c.h(0).ry(Parameter("a"), 1);
  CHECK(compose(c, Circuit(2)) == c);

  const Parameter alpha("alpha"), beta("beta");
  Circuit a(1), b(1);
  a.ry(alpha, 0);
  b.ry(beta, 0);
  const Circuit ab = compose(a, b);
  CHECK(ab.parameters() == std::vector<Parameter>{alpha, beta});
  CHECK(ab.gates().size() == 2);

  CHECK_THROWS_AS(compose(Circuit(2), Circuit(3)), ValidationError);

  Circuit clash(1);
  clash.rx(Parameter("alpha"), 0);
  CHECK_THROWS_AS(compose(a, clash), ValidationError);
  CHECK(compose(a, a).num_parameters() == 1);
}

TEST_CASE("zz feature map layout") {
  const Circuit one = zz_feature_map(1, 1);
  REQUIRE(one.gates().size() == 2);
  CHECK(one.gates()[0].kind == GateKind::H);
  CHECK(one.gates()[1].kind == GateKind::RZ);
  CHECK(one.num_parameters() == 1);

  CHECK(zz_feature_map(2, 1).gates().size() == 7);
  const Circuit two = zz_feature_map(2, 2);
  CHECK(two.gates().size() == 14);
  CHECK(two.num_parameters() == 2);

  // RZ(2 (pi - x0)(pi - x1)) on qubit 1 sits between the CX pair.
  const Circuit single = zz_feature_map(2, 1);
  const auto &g = single.gates();
  CHECK(g[4].kind == GateKind::CX);
  CHECK(g[5].kind == GateKind::RZ);
  CHECK(g[5].targets[0] == 1);
  const std::vector<double> x{0.4, 1.1};
  CHECK(qmlkit::bind(zz_feature_map(2, 1), x).gates()[5].angle->constant_value() ==
        doctest::Approx(2 * (pi - 0.4) * (pi - 1.1)).epsilon(1e-14));

  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t r = 1; r <= 3; ++r) {
      CHECK(zz_feature_map(n, r).num_parameters() == n);
      CHECK(real_amplitudes(n, r).num_parameters() == n * (r + 1));
    }
  }
  CHECK_THROWS_AS(zz_feature_map(2, 0), ValidationError);
}

TEST_CASE("real amplitudes layout") {
  const Circuit one = real_amplitudes(1, 1);
  REQUIRE(one.gates().size() == 2);
  CHECK(one.gates()[0].kind == GateKind::RY);
  CHECK(one.gates()[1].kind == GateKind::RY);
  CHECK(one.num_parameters() == 2);

  const Circuit two = real_amplitudes(2, 1);
  CHECK(two.num_parameters() == 4);
  CHECK(std::count_if(two.gates().begin(), two.gates().end(),
                      [](const Gate &g) { return g.kind == GateKind::CX; }) == 1);
  CHECK(real_amplitudes(3, 2).num_parameters() == 9);
}

TEST_CASE("with_angle keeps referenced parameters in order") {
  const auto p = make_parameters("p", 3);
  Circuit c(1);
  c.ry(p[0], 0).ry(p[1], 0).ry(p[2], 0);
  const Circuit d = c.with_angle(1, 0.5);
  CHECK(d.parameters() == std::vector<Parameter>{p[0], p[2]});
  CHECK_THROWS_AS(c.with_angle(7, 0.5), ValidationError);
}

TEST_CASE("circuit JSON round trip") {
  gen::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = gen::shift_friendly_circuit(rng);
    if (c.num_qubits() > 1) {
      c.append(Gate::cry({{0, 0}}, AngleExpr(0.5, {{0.25, -2.0, c.parameters()[0]}}), 1));
    }
    const auto j = circuit_to_json(c);
    CHECK(j["format_version"] == 1);
    const Circuit back = circuit_from_json(j);
    CHECK(circuit_to_json(back) == j);
    const auto v = gen::uniform_values(rng, c.num_parameters());
    const auto s1 = run(qmlkit::bind(c, v));
    const auto s2 = run(qmlkit::bind(back, v));
    for (std::size_t i = 0; i < s1.dimension(); ++i) {
      CHECK(s1[i] == s2[i]);
    }
  }
}

TEST_CASE("circuit JSON errors carry the field path") {
  const auto parse = [](const char *text) { return circuit_from_json(parse_json(text)); };
  const auto path_of = [&](const char *text) {
    try {
      parse(text);
    } catch (const SchemaError &e) {
      return e.path();
    }
    return std::string("no error");
  };
  CHECK(path_of(R"({"gates": [], "parameters": []})") == "$.num_qubits");
  CHECK(
      path_of(R"({"num_qubits": 1, "gates": [{"kind": "T", "targets": [0]}], "parameters": []})") ==
      "$.gates[0].kind");
  CHECK(
      path_of(R"({"num_qubits": 1, "gates": [{"kind": "H", "targets": [3]}], "parameters": []})") ==
      "$.gates[0]");
  CHECK(path_of(R"({"num_qubits": 1, "gates": [{"kind": "RY", "targets": [0],
      "angle": {"coeff": 1, "factors": [[0, 1, "a"]]}}], "parameters": []})") == "$.parameters");
  CHECK(path_of(R"({"num_qubits": 1, "gates": [], "parameters": [], "format_version": 2})") ==
        "$.format_version");
  CHECK(path_of(R"({"num_qubits": 1, "gates": [)") == "$");
}

TEST_CASE("declared parameters keep their order through JSON") {
  const auto j = parse_json(R"({"num_qubits": 1, "gates": [
      {"kind": "RY", "targets": [0], "angle": {"coeff": 1, "factors": [[0, 1, "b"]]}},
      {"kind": "RY", "targets": [0], "angle": {"coeff": 1, "factors": [[0, 1, "a"]]}}],
      "parameters": ["a", "b"]})");
  const Circuit c = circuit_from_json(j);
  REQUIRE(c.num_parameters() == 2);
  CHECK(c.parameters()[0].name() == "a");
  CHECK(c.parameters()[1].name() == "b");
}
