/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "qmlkit/error.hpp"
#include "qmlkit/model_io.hpp"
#include "qmlkit/serialization.hpp"
#include "support/generators.hpp"

using namespace qmlkit;
using std::numbers::pi;

namespace {

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("qmlkit_io_" + name);
}

SavedModel reload(const SavedModel &m, const std::string &name) {
  const auto path = temp_file(name);
  save_model(m, path);
  auto back = load_model(path);
  std::filesystem::remove(path);
  return back;
}

std::string schema_path(const nlohmann::json &j) {
  try {
    model_from_json(j);
  } catch (const SchemaError &e) {
    return e.path();
  }
  return "no error";
}

Dataset blobs(gen::Rng &rng, std::size_t m) {
  Dataset d{Matrix(m, 2), {}};
  for (std::size_t i = 0; i < m; ++i) {
    const double s = i % 2 == 0 ? 1.0 : -1.0;
    d.features(i, 0) = s * pi / 4 + 0.2 * rng.normal();
    d.features(i, 1) = s * pi / 4 + 0.2 * rng.normal();
    d.labels.push_back(s);
  }
  return d;
}

} // namespace

TEST_CASE("vqc round trip predicts identically") {
  gen::Rng rng(81);
  const auto data = blobs(rng, 6);
  auto config = default_variational_config();
  config.max_iterations = 20;
  const auto model = vqc_fit(data, zz_feature_map(2, 1), real_amplitudes(2, 1), config, 2);
  const auto back = reload({model, LabelMap{"cat", "dog"}}, "vqc.json");
  REQUIRE(std::holds_alternative<VqcModel>(back.model));
  CHECK(back.labels == LabelMap{"cat", "dog"});
  const auto &m2 = std::get<VqcModel>(back.model);
  CHECK(m2.weights == model.weights);
  CHECK(m2.loss_history == model.loss_history);
  const Matrix probe = gen::uniform_matrix(rng, 10, 2, -pi, pi);
  CHECK(vqc_predict(m2, probe).positive_probability ==
        vqc_predict(model, probe).positive_probability);
}

TEST_CASE("vqr round trip keeps the observable") {
  const Dataset data{Matrix::from_rows({{0.1}, {1.2}}), {0.9, 0.3}};
  Circuit fm(2), ansatz(2);
  fm.ry(Parameter("x"), 0).ry(AngleExpr::linear(fm.parameters()[0], -1.0), 1);
  ansatz = real_amplitudes(2, 1);
  auto config = default_variational_config();
  config.max_iterations = 10;
  const auto obs = PauliObservable::parse("0.5*ZI + 0.5*IZ");
  const auto model = vqr_fit(data, fm, ansatz, obs, config, 1);
  const auto back = reload({model, std::nullopt}, "vqr.json");
  const auto &m2 = std::get<VqrModel>(back.model);
  CHECK_FALSE(back.labels.has_value());
  CHECK(m2.observable.to_string() == obs.to_string());
  gen::Rng rng(82);
  const Matrix probe = gen::uniform_matrix(rng, 10, 1, -pi, pi);
  CHECK(vqr_predict(m2, probe) == vqr_predict(model, probe));
}

TEST_CASE("svm round trips keep decision values") {
  gen::Rng rng(83);
  const auto data = blobs(rng, 8);
  const Matrix probe = gen::uniform_matrix(rng, 10, 2, -pi, pi);
  const auto q = qsvc_fit(data, angle_feature_map(2), 0.7).model;
  const auto p = pegasos_fit(data, angle_feature_map(2), 0.1, 50, 4).model;
  for (const auto &model : {q, p}) {
    const auto back = reload({model, LabelMap{"-1", "1"}}, "svm.json");
    const auto &m2 = std::get<SvmModel>(back.model);
    CHECK(model_type(back.model) == (model.kind == SvmKind::Qsvc ? "qsvc" : "pegasos"));
    const auto d1 = svm_predict(model, probe).decision;
    const auto d2 = svm_predict(m2, probe).decision;
    for (std::size_t i = 0; i < d1.size(); ++i) {
      CHECK(std::abs(d1[i] - d2[i]) < 1e-12);
    }
  }
}

TEST_CASE("malformed model files are schema errors") {
  const auto path = temp_file("truncated.json");
  SvmModel m;
  m.feature_map = angle_feature_map(1);
  m.support_data = Matrix(0, 1);
  save_model({m, std::nullopt}, path);
  const auto text = read_text_file(path);
  write_text_file(path, text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_model(path), SchemaError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_model(temp_file("missing.json")), ValidationError);

  const auto good = model_to_json({m, std::nullopt});
  CHECK(schema_path(good) == "no error");
  auto j = good;
  j["type"] = "forest";
  CHECK(schema_path(j) == "$.type");
  j = good;
  j.erase("feature_map");
  CHECK(schema_path(j) == "$.feature_map");
  j = good;
  j["alphas"] = {1.0};
  CHECK(schema_path(j).rfind("$.", 0) == 0);
  j = good;
  j["feature_map"]["gates"][0]["kind"] = "Q";
  CHECK(schema_path(j) == "$.feature_map.gates[0].kind");
  j = good;
  j["format_version"] = 7;
  CHECK(schema_path(j) == "$.format_version");
  j = good;
  j["label_map"] = {{"+1", "yes"}};
  CHECK(schema_path(j).rfind("$.label_map", 0) == 0);
}
