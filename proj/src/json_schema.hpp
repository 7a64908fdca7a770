/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlkit/error.hpp"

namespace qmlkit::detail {

using nlohmann::json;

inline std::string child(const std::string &path, const std::string &key) {
  return path + "." + key;
}
inline std::string child(const std::string &path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

inline const json &field(const json &j, const std::string &key, const std::string &path) {
  if (!j.is_object()) {
    throw SchemaError(path, "expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(child(path, key), "missing field");
  }
  return *it;
}

inline double as_number(const json &j, const std::string &path) {
  if (!j.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(path, "expected a finite number");
  }
  return v;
}

inline std::size_t as_index(const json &j, const std::string &path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline const std::string &as_string(const json &j, const std::string &path) {
  if (!j.is_string()) {
    throw SchemaError(path, "expected a string");
  }
  return j.get_ref<const std::string &>();
}

inline const json &as_array(const json &j, const std::string &path) {
  if (!j.is_array()) {
    throw SchemaError(path, "expected an array");
  }
  return j;
}

inline std::vector<double> as_numbers(const json &j, const std::string &path) {
  as_array(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], child(path, i)));
  }
  return out;
}

/// Accepts a missing version; rejects any version other than 1.
inline void check_format_version(const json &j, const std::string &path) {
  if (j.is_object() && j.contains("format_version")) {
    const auto &v = j["format_version"];
    if (!v.is_number_integer() || v.get<long long>() != 1) {
      throw SchemaError(child(path, "format_version"), "unsupported format version");
    }
  }
}

/// Parses text, turning syntax errors (including truncation) into SchemaError at `$`.
inline json parse_text(const std::string &text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
}

} // namespace qmlkit::detail
