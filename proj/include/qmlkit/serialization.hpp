/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qmlkit/circuit.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

/**
 * Circuit as JSON:
 *
 *     {"format_version": 1, "num_qubits": n,
 *      "gates": [{"kind": "RY", "targets": [0], "controls": [[q, v], ...],
 *                 "angle": {"coeff": c, "factors": [[offset, scale, "name"], ...]}}],
 *      "parameters": ["name", ...]}
 *
 * `controls` and `angle` are omitted when a gate has none.
 */
nlohmann::json circuit_to_json(const Circuit &circuit);

/// Fresh Parameter objects are created per distinct name. Errors carry the field path.
Circuit circuit_from_json(const nlohmann::json &j, const std::string &path = "$");

/// {"shots": n | "exact", "probs": {"bitstring": p}}; bitstrings are qubit 0 first.
nlohmann::json quasi_to_json(const QuasiDistribution &dist);

/// Parses JSON text; syntax errors (including truncation) become SchemaError at `$`.
nlohmann::json parse_json(const std::string &text);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace qmlkit
