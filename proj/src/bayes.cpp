/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qmlkit/bayes.hpp"

#include <cmath>
#include <set>
#include <thread>

#include "json_schema.hpp"
#include "qmlkit/error.hpp"
#include "qmlkit/random.hpp"
#include "qmlkit/statevector.hpp"

namespace qmlkit {

namespace {

constexpr std::size_t kMaxEnumerationNodes = 20;
constexpr std::size_t kChunkShots = 1024;

struct ResolvedQuery {
  std::size_t target;
  int target_value;
  std::uint64_t evidence_mask = 0;
  std::uint64_t evidence_bits = 0;
};

int check_bit(int v, const std::string &what) {
  if (v != 0 && v != 1) {
    throw ValidationError(what + " value must be 0 or 1");
  }
  return v;
}

ResolvedQuery resolve(const BayesianNetwork &bn, const Query &q) {
  const auto target = bn.index_of(q.target);
  if (!target) {
    throw ValidationError("unknown query node '" + q.target + "'");
  }
  ResolvedQuery r{*target, check_bit(q.target_value, "query")};
  for (const auto &[name, value] : q.evidence) {
    const auto idx = bn.index_of(name);
    if (!idx) {
      throw ValidationError("unknown evidence node '" + name + "'");
    }
    if (*idx == *target) {
      throw ValidationError("query node '" + name + "' also appears in the evidence");
    }
    r.evidence_mask |= 1ULL << *idx;
    if (check_bit(value, "evidence")) {
      r.evidence_bits |= 1ULL << *idx;
    }
  }
  return r;
}

double rotation_angle(double p) { return 2.0 * std::asin(std::sqrt(p)); }

} // namespace

std::size_t BayesianNetwork::add_node(std::string name, const std::vector<std::string> &parents,
                                      std::vector<double> cpt) {
  if (name.empty()) {
    throw ValidationError("node name must not be empty");
  }
  if (index_of(name)) {
    throw ValidationError("duplicate node name '" + name + "'");
  }
  BayesNode node{std::move(name), {}, std::move(cpt)};
  std::set<std::size_t> seen;
  for (const auto &p : parents) {
    const auto idx = index_of(p);
    if (!idx) {
      throw ValidationError("parent '" + p + "' of '" + node.name + "' must be declared before it");
    }
    if (!seen.insert(*idx).second) {
      throw ValidationError("parent '" + p + "' listed twice for '" + node.name + "'");
    }
    node.parents.push_back(*idx);
  }
  if (node.parents.size() > kMaxEnumerationNodes) {
    throw ValidationError("'" + node.name + "' has more parents than the network may have nodes");
  }
  const std::size_t needed = std::size_t{1} << node.parents.size();
  if (node.cpt.size() != needed) {
    throw ValidationError("CPT of '" + node.name + "' needs " + std::to_string(needed) +
                          " entries, got " + std::to_string(node.cpt.size()));
  }
  for (double p : node.cpt) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("CPT entry of '" + node.name + "' is outside [0, 1]");
    }
  }
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::optional<std::size_t> BayesianNetwork::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

double BayesianNetwork::joint(std::uint64_t assignment) const {
  double p = 1.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto &node = nodes_[i];
    std::size_t a = 0;
    for (std::size_t k = 0; k < node.parents.size(); ++k) {
      a |= ((assignment >> node.parents[k]) & 1ULL) << k;
    }
    const double p1 = node.cpt[a];
    p *= ((assignment >> i) & 1ULL) ? p1 : 1.0 - p1;
  }
  return p;
}

Circuit compile_network(const BayesianNetwork &bn) {
  if (bn.size() == 0) {
    throw ValidationError("network has no nodes");
  }
  if (bn.size() > kMaxQubits) {
    throw ValidationError("network has " + std::to_string(bn.size()) +
                          " nodes; the simulator supports at most " + std::to_string(kMaxQubits));
  }
  Circuit c(bn.size());
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const auto &node = bn.nodes()[i];
    if (node.parents.empty()) {
      c.ry(rotation_angle(node.cpt[0]), i);
      continue;
    }
    for (std::size_t a = 0; a < node.cpt.size(); ++a) {
      std::vector<Control> controls;
      for (std::size_t k = 0; k < node.parents.size(); ++k) {
        controls.push_back({node.parents[k], static_cast<int>((a >> k) & 1U)});
      }
      c.append(Gate::cry(std::move(controls), rotation_angle(node.cpt[a]), i));
    }
  }
  return c;
}

std::vector<double> joint_distribution(const BayesianNetwork &bn) {
  if (bn.size() > kMaxEnumerationNodes) {
    throw ValidationError("enumeration supports at most " + std::to_string(kMaxEnumerationNodes) +
                          " nodes");
  }
  std::vector<double> out(std::size_t{1} << bn.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = bn.joint(a);
  }
  return out;
}

double exact_inference(const BayesianNetwork &bn, const Query &query) {
  const auto q = resolve(bn, query);
  const auto joint = joint_distribution(bn);
  double evidence = 0.0, hit = 0.0;
  for (std::uint64_t a = 0; a < joint.size(); ++a) {
    if ((a & q.evidence_mask) != q.evidence_bits) {
      continue;
    }
    evidence += joint[a];
    if (static_cast<int>((a >> q.target) & 1ULL) == q.target_value) {
      hit += joint[a];
    }
  }
  if (!(evidence > 0.0)) {
    throw NoSupportError("evidence has zero probability");
  }
  return hit / evidence;
}

RejectionResult rejection_inference(const BayesianNetwork &bn, const Query &query,
                                    std::size_t shots, std::uint64_t seed, std::size_t workers) {
  if (shots < 1) {
    throw ValidationError("rejection sampling needs at least one shot");
  }
  const auto q = resolve(bn, query);
  const auto probs = run(compile_network(bn)).probabilities();

  const std::size_t chunks = (shots + kChunkShots - 1) / kChunkShots;
  std::vector<std::size_t> accepted(chunks, 0), hits(chunks, 0);
  const auto run_chunk = [&](std::size_t c) {
    const std::size_t n = std::min(kChunkShots, shots - c * kChunkShots);
    Rng rng = Rng::derive(seed, c);
    const auto counts = sample_counts(probs, n, rng);
    for (std::uint64_t a = 0; a < counts.size(); ++a) {
      if (counts[a] == 0 || (a & q.evidence_mask) != q.evidence_bits) {
        continue;
      }
      accepted[c] += counts[a];
      if (static_cast<int>((a >> q.target) & 1ULL) == q.target_value) {
        hits[c] += counts[a];
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, chunks);
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      run_chunk(c);
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) {
          run_chunk(c);
        }
      });
    }
    for (auto &t : pool) {
      t.join();
    }
  }

  RejectionResult r;
  r.shots = shots;
  std::size_t hit = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    r.accepted += accepted[c];
    hit += hits[c];
  }
  if (r.accepted == 0) {
    throw NoSupportError("no sample out of " + std::to_string(shots) +
                         " was consistent with the evidence");
  }
  r.estimate = static_cast<double>(hit) / static_cast<double>(r.accepted);
  return r;
}

BayesianNetwork network_from_json(const nlohmann::json &j) {
  using namespace detail;
  const std::string root = "$";
  check_format_version(j, root);
  const std::string npath = child(root, "nodes");
  const auto &nodes = as_array(field(j, "nodes", root), npath);
  BayesianNetwork bn;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = child(npath, i);
    const auto &nj = nodes[i];
    const auto &name = as_string(field(nj, "name", path), child(path, "name"));
    std::vector<std::string> parents;
    const std::string ppath = child(path, "parents");
    const auto &pj =
        nj.contains("parents") ? as_array(nj["parents"], ppath) : nlohmann::json::array();
    for (std::size_t k = 0; k < pj.size(); ++k) {
      parents.push_back(as_string(pj[k], child(ppath, k)));
    }
    const std::string cpath = child(path, "cpt");
    const auto &cj = field(nj, "cpt", path);
    if (!cj.is_object()) {
      throw SchemaError(cpath, "expected an object keyed by parent bitstrings");
    }
    const std::size_t k = parents.size();
    if (k > kMaxEnumerationNodes) {
      throw SchemaError(ppath, "too many parents");
    }
    std::vector<double> cpt(std::size_t{1} << k);
    std::vector<bool> filled(cpt.size(), false);
    for (const auto &[key, value] : cj.items()) {
      const std::string kpath = cpath + "[\"" + key + "\"]";
      if (key.size() != k || key.find_first_not_of("01") != std::string::npos) {
        throw SchemaError(kpath, "key must be a " + std::to_string(k) + "-character bitstring");
      }
      const auto a = static_cast<std::size_t>(from_bitstring(key));
      cpt[a] = as_number(value, kpath);
      if (!(cpt[a] >= 0.0 && cpt[a] <= 1.0)) {
        throw SchemaError(kpath, "probability must lie in [0, 1]");
      }
      filled[a] = true;
    }
    for (std::size_t a = 0; a < cpt.size(); ++a) {
      if (!filled[a]) {
        throw SchemaError(cpath + "[\"" + to_bitstring(a, k) + "\"]", "missing CPT entry");
      }
    }
    try {
      bn.add_node(name, parents, std::move(cpt));
    } catch (const SchemaError &) {
      throw;
    } catch (const ValidationError &e) {
      throw SchemaError(path, e.what());
    }
  }
  return bn;
}

nlohmann::json network_to_json(const BayesianNetwork &bn) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto &node : bn.nodes()) {
    nlohmann::json parents = nlohmann::json::array();
    for (auto p : node.parents) {
      parents.push_back(bn.nodes()[p].name);
    }
    nlohmann::json cpt = nlohmann::json::object();
    for (std::size_t a = 0; a < node.cpt.size(); ++a) {
      cpt[to_bitstring(a, node.parents.size())] = node.cpt[a];
    }
    nodes.push_back({{"name", node.name}, {"parents", parents}, {"cpt", cpt}});
  }
  return {{"format_version", 1}, {"nodes", nodes}};
}

} // namespace qmlkit
