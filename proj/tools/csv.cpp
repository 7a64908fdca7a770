/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "csv.hpp"

#include <charconv>
#include <sstream>

#include "qmlkit/error.hpp"

namespace qmlkit::cli {

namespace {

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double parse_number(const std::string &cell, const std::string &where) {
  double v = 0.0;
  const char *end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw ValidationError(where + ": '" + cell + "' is not a number");
  }
  return v;
}

} // namespace

Table parse_table(const std::string &text, const std::string &source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      header = split_fields(line);
    }
  }
  if (header.empty()) {
    throw ValidationError(source + ": missing header row");
  }

  Table t;
  std::optional<std::size_t> label_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") {
      if (label_col) {
        throw ValidationError(source + ":" + std::to_string(line_no) +
                              ": duplicate column 'label'");
      }
      label_col = c;
    } else {
      t.feature_names.push_back(header[c]);
    }
  }
  if (t.feature_names.empty()) {
    throw ValidationError(source + ": no feature columns");
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    const auto cells = split_fields(line);
    if (cells.size() != header.size()) {
      throw ValidationError(where + ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_col && c == *label_col) {
        if (cells[c].empty()) {
          throw ValidationError(where + ": empty label");
        }
        labels.push_back(cells[c]);
      } else {
        row.push_back(parse_number(cells[c], where));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ValidationError(source + ": no data rows");
  }
  t.features = Matrix::from_rows(rows);
  if (label_col) {
    t.labels = std::move(labels);
  }
  return t;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

} // namespace qmlkit::cli
