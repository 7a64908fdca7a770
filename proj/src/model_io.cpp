/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/model_io.hpp"

#include "json_schema.hpp"
#include "qmlkit/serialization.hpp"

namespace qmlkit {

using nlohmann::json;
using namespace detail;

namespace {

json matrix_to_json(const Matrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(m.row_vector(i));
  }
  return rows;
}

Matrix matrix_from_json(const json &j, const std::string &path, std::size_t cols) {
  as_array(j, path);
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto row = as_numbers(j[i], child(path, i));
    if (row.size() != cols) {
      throw SchemaError(child(path, i), "expected " + std::to_string(cols) + " values");
    }
    std::copy(row.begin(), row.end(), m.row(i).begin());
  }
  return m;
}

std::vector<double> numbers_field(const json &j, const std::string &key, const std::string &path) {
  return as_numbers(field(j, key, path), child(path, key));
}

Circuit circuit_field(const json &j, const std::string &key, const std::string &path) {
  return circuit_from_json(field(j, key, path), child(path, key));
}

std::vector<double> weights_field(const json &j, const Circuit &ansatz, const std::string &path) {
  auto w = numbers_field(j, "weights", path);
  if (w.size() != ansatz.num_parameters()) {
    throw SchemaError(child(path, "weights"),
                      "expected " + std::to_string(ansatz.num_parameters()) + " weights");
  }
  return w;
}

json svm_to_json(const SvmModel &m) {
  json j;
  j["feature_map"] = circuit_to_json(m.feature_map);
  j["alphas"] = m.alphas;
  j["support_labels"] = m.support_labels;
  j["support_data"] = matrix_to_json(m.support_data);
  if (m.kind == SvmKind::Qsvc) {
    j["bias"] = m.bias;
  } else {
    j["lambda"] = m.lambda;
    j["steps"] = m.steps;
  }
  return j;
}

SvmModel svm_from_json(const json &j, SvmKind kind, const std::string &path) {
  SvmModel m;
  m.kind = kind;
  m.feature_map = circuit_field(j, "feature_map", path);
  m.alphas = numbers_field(j, "alphas", path);
  m.support_labels = numbers_field(j, "support_labels", path);
  const std::size_t s = m.alphas.size();
  if (m.support_labels.size() != s) {
    throw SchemaError(child(path, "support_labels"), "expected " + std::to_string(s) + " labels");
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (m.support_labels[i] != 1.0 && m.support_labels[i] != -1.0) {
      throw SchemaError(child(child(path, "support_labels"), i), "expected -1 or +1");
    }
    if (m.alphas[i] < 0.0) {
      throw SchemaError(child(child(path, "alphas"), i), "expected a non-negative value");
    }
  }
  m.support_data = matrix_from_json(field(j, "support_data", path), child(path, "support_data"),
                                    m.feature_map.num_parameters());
  if (m.support_data.rows() != s) {
    throw SchemaError(child(path, "support_data"), "expected " + std::to_string(s) + " rows");
  }
  if (kind == SvmKind::Qsvc) {
    m.bias = as_number(field(j, "bias", path), child(path, "bias"));
  } else {
    m.lambda = as_number(field(j, "lambda", path), child(path, "lambda"));
    if (!(m.lambda > 0.0)) {
      throw SchemaError(child(path, "lambda"), "expected a positive value");
    }
    m.steps = as_index(field(j, "steps", path), child(path, "steps"));
    if (m.steps == 0) {
      throw SchemaError(child(path, "steps"), "expected at least one step");
    }
  }
  return m;
}

struct ToJson {
  json operator()(const VqcModel &m) const {
    return {{"feature_map", circuit_to_json(m.feature_map)},
            {"ansatz", circuit_to_json(m.ansatz)},
            {"weights", m.weights},
            {"loss_history", m.loss_history}};
  }
  json operator()(const VqrModel &m) const {
    return {{"feature_map", circuit_to_json(m.feature_map)},
            {"ansatz", circuit_to_json(m.ansatz)},
            {"observable", m.observable.to_string()},
            {"weights", m.weights},
            {"loss_history", m.loss_history}};
  }
  json operator()(const SvmModel &m) const { return svm_to_json(m); }
};

} // namespace

std::string model_type(const Model &model) {
  if (std::holds_alternative<VqcModel>(model)) {
    return "vqc";
  }
  if (std::holds_alternative<VqrModel>(model)) {
    return "vqr";
  }
  return std::get<SvmModel>(model).kind == SvmKind::Qsvc ? "qsvc" : "pegasos";
}

json model_to_json(const SavedModel &saved) {
  json j = std::visit(ToJson{}, saved.model);
  j["format_version"] = 1;
  j["type"] = model_type(saved.model);
  if (saved.labels) {
    j["label_map"] = {{"-1", saved.labels->negative}, {"+1", saved.labels->positive}};
  }
  return j;
}

SavedModel model_from_json(const json &j) {
  const std::string path = "$";
  if (!j.is_object()) {
    throw SchemaError(path, "expected an object");
  }
  check_format_version(j, path);
  const std::string type = as_string(field(j, "type", path), child(path, "type"));

  std::optional<LabelMap> labels;
  if (j.contains("label_map")) {
    const std::string lp = child(path, "label_map");
    const auto &lm = j["label_map"];
    labels = LabelMap{as_string(field(lm, "-1", lp), child(lp, "-1")),
                      as_string(field(lm, "+1", lp), child(lp, "+1"))};
  }

  if (type == "qsvc") {
    return {svm_from_json(j, SvmKind::Qsvc, path), labels};
  }
  if (type == "pegasos") {
    return {svm_from_json(j, SvmKind::Pegasos, path), labels};
  }
  if (type != "vqc" && type != "vqr") {
    throw SchemaError(child(path, "type"), "unknown model type '" + type + "'");
  }
  Circuit fm = circuit_field(j, "feature_map", path);
  Circuit ansatz = circuit_field(j, "ansatz", path);
  auto weights = weights_field(j, ansatz, path);
  std::vector<double> history;
  if (j.contains("loss_history")) {
    history = numbers_field(j, "loss_history", path);
  }
  if (type == "vqc") {
    return {VqcModel{std::move(fm), std::move(ansatz), std::move(weights), std::move(history)},
            labels};
  }
  const auto &text = as_string(field(j, "observable", path), child(path, "observable"));
  std::optional<PauliObservable> obs;
  try {
    obs = PauliObservable::parse(text);
  } catch (const ValidationError &e) {
    throw SchemaError(child(path, "observable"), e.what());
  }
  if (obs->num_qubits() != fm.num_qubits()) {
    throw SchemaError(child(path, "observable"), "width does not match the circuit");
  }
  return {VqrModel{std::move(fm), std::move(ansatz), std::move(*obs), std::move(weights),
                   std::move(history)},
          labels};
}

void save_model(const SavedModel &saved, const std::filesystem::path &path) {
  write_text_file(path, model_to_json(saved).dump(2) + "\n");
}

SavedModel load_model(const std::filesystem::path &path) {
  return model_from_json(parse_text(read_text_file(path)));
}

} // namespace qmlkit
