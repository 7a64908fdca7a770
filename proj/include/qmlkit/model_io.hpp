/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "qmlkit/models.hpp"

namespace qmlkit {

using Model = std::variant<VqcModel, VqrModel, SvmModel>;

/// Original label text for the internal -1 and +1 classes.
struct LabelMap {
  std::string negative;
  std::string positive;

  friend bool operator==(const LabelMap &, const LabelMap &) = default;
};

struct SavedModel {
  Model model;
  std::optional<LabelMap> labels;
};

/// "vqc", "vqr", "qsvc" or "pegasos".
std::string model_type(const Model &model);

/**
 * Versioned model document:
 *
 *     {"format_version": 1, "type": "qsvc", "feature_map": {...}, "alphas": [...],
 *      "support_labels": [...], "support_data": [[...]], "bias": b, "label_map": {...}}
 *
 * Variational models carry "ansatz" and "weights" (plus "observable" for vqr).
 * Doubles are written with round-trip precision, so a reloaded model predicts
 * bit-identically.
 */
nlohmann::json model_to_json(const SavedModel &saved);

/// Throws SchemaError naming the offending field.
SavedModel model_from_json(const nlohmann::json &j);

void save_model(const SavedModel &saved, const std::filesystem::path &path);
SavedModel load_model(const std::filesystem::path &path);

} // namespace qmlkit
