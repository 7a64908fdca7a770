/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/serialization.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json_schema.hpp"

namespace qmlkit {

using detail::child;
using detail::json;

json circuit_to_json(const Circuit &circuit) {
  json gates = json::array();
  for (const auto &g : circuit.gates()) {
    json jg{{"kind", std::string(to_string(g.kind))}, {"targets", g.targets}};
    if (!g.controls.empty()) {
      json controls = json::array();
      for (const auto &c : g.controls) {
        controls.push_back({c.qubit, c.value});
      }
      jg["controls"] = std::move(controls);
    }
    if (g.angle) {
      json factors = json::array();
      for (const auto &f : g.angle->factors()) {
        factors.push_back({f.offset, f.scale, f.param.name()});
      }
      jg["angle"] = {{"coeff", g.angle->coefficient()}, {"factors", std::move(factors)}};
    }
    gates.push_back(std::move(jg));
  }
  json params = json::array();
  for (const auto &p : circuit.parameters()) {
    params.push_back(p.name());
  }
  return {{"format_version", 1},
          {"num_qubits", circuit.num_qubits()},
          {"gates", std::move(gates)},
          {"parameters", std::move(params)}};
}

Circuit circuit_from_json(const json &j, const std::string &path) {
  detail::check_format_version(j, path);
  const auto num_qubits =
      detail::as_index(detail::field(j, "num_qubits", path), child(path, "num_qubits"));
  if (num_qubits == 0) {
    throw SchemaError(child(path, "num_qubits"), "must be positive");
  }
  Circuit circuit(num_qubits);

  std::map<std::string, Parameter> by_name;
  auto param_for = [&](const std::string &name) -> const Parameter & {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      it = by_name.emplace(name, Parameter(name)).first;
    }
    return it->second;
  };

  const auto params_path = child(path, "parameters");
  const auto &params = detail::as_array(detail::field(j, "parameters", path), params_path);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto &name = detail::as_string(params[i], child(params_path, i));
    if (by_name.count(name) != 0) {
      throw SchemaError(child(params_path, i), "duplicate parameter name '" + name + "'");
    }
    circuit.declare(param_for(name));
  }

  const auto gates_path = child(path, "gates");
  const auto &gates = detail::as_array(detail::field(j, "gates", path), gates_path);
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const auto gpath = child(gates_path, gi);
    const auto &jg = gates[gi];
    const auto &kind_name =
        detail::as_string(detail::field(jg, "kind", gpath), child(gpath, "kind"));
    const auto kind = gate_kind_from_string(kind_name);
    if (!kind) {
      throw SchemaError(child(gpath, "kind"), "unknown gate kind '" + kind_name + "'");
    }
    Gate gate{*kind, {}, {}, std::nullopt};
    const auto tpath = child(gpath, "targets");
    const auto &targets = detail::as_array(detail::field(jg, "targets", gpath), tpath);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      gate.targets.push_back(detail::as_index(targets[t], child(tpath, t)));
    }
    if (jg.contains("controls")) {
      const auto cpath = child(gpath, "controls");
      const auto &controls = detail::as_array(jg["controls"], cpath);
      for (std::size_t c = 0; c < controls.size(); ++c) {
        const auto epath = child(cpath, c);
        if (!controls[c].is_array() || controls[c].size() != 2) {
          throw SchemaError(epath, "expected [qubit, value]");
        }
        const auto q = detail::as_index(controls[c][0], child(epath, 0));
        const auto v = detail::as_index(controls[c][1], child(epath, 1));
        gate.controls.push_back({q, static_cast<int>(v)});
      }
    }
    if (jg.contains("angle")) {
      const auto apath = child(gpath, "angle");
      const auto &ja = jg["angle"];
      const double coeff =
          detail::as_number(detail::field(ja, "coeff", apath), child(apath, "coeff"));
      std::vector<AffineFactor> factors;
      if (ja.contains("factors")) {
        const auto fpath = child(apath, "factors");
        const auto &jf = detail::as_array(ja["factors"], fpath);
        for (std::size_t f = 0; f < jf.size(); ++f) {
          const auto epath = child(fpath, f);
          if (!jf[f].is_array() || jf[f].size() != 3) {
            throw SchemaError(epath, "expected [offset, scale, \"param\"]");
          }
          const double offset = detail::as_number(jf[f][0], child(epath, 0));
          const double scale = detail::as_number(jf[f][1], child(epath, 1));
          const auto &name = detail::as_string(jf[f][2], child(epath, 2));
          factors.push_back({offset, scale, param_for(name)});
        }
      }
      gate.angle = AngleExpr(coeff, std::move(factors));
    }
    try {
      circuit.append(std::move(gate));
    } catch (const SchemaError &) {
      throw;
    } catch (const ValidationError &e) {
      throw SchemaError(gpath, e.what());
    }
  }

  if (circuit.num_parameters() != params.size()) {
    throw SchemaError(params_path, "gates reference parameters missing from the list");
  }
  return circuit;
}

json quasi_to_json(const QuasiDistribution &dist) {
  json probs = json::object();
  for (const auto &[outcome, p] : dist.probabilities()) {
    probs[dist.bitstring(outcome)] = p;
  }
  json shots = dist.shots() ? json(*dist.shots()) : json("exact");
  return {{"shots", std::move(shots)}, {"probs", std::move(probs)}};
}

nlohmann::json parse_json(const std::string &text) { return detail::parse_text(text); }

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ValidationError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  if (!out) {
    throw ValidationError("failed writing '" + path.string() + "'");
  }
}

} // namespace qmlkit
