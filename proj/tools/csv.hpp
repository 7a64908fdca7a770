/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmlkit/matrix.hpp"

namespace qmlkit::cli {

/// A parsed data file: every column except "label" is a feature, in file order.
struct Table {
  std::vector<std::string> feature_names;
  Matrix features;
  std::optional<std::vector<std::string>> labels;
};

/// Parses comma-separated text with a header row. Errors name the line.
Table parse_table(const std::string &text, const std::string &source);

/// Shortest text that parses back to exactly `v`.
std::string format_double(double v);

} // namespace qmlkit::cli
