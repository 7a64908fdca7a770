/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlkit/circuit.hpp"

namespace qmlkit {

/**
 * Binary variable with its conditional probability table. `cpt[a]` is
 * P(node = 1 | parents = a), where bit k of `a` is the value of `parents[k]`.
 */
struct BayesNode {
  std::string name;
  std::vector<std::size_t> parents;
  std::vector<double> cpt;
};

/// Nodes in topological order; a node's parents always precede it.
class BayesianNetwork {
public:
  /// Appends a node whose parents are named by earlier nodes. Returns its index.
  std::size_t add_node(std::string name, const std::vector<std::string> &parents,
                       std::vector<double> cpt);

  const std::vector<BayesNode> &nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::optional<std::size_t> index_of(const std::string &name) const;

  /// Product of CPT entries for a full assignment (bit i = node i).
  double joint(std::uint64_t assignment) const;

private:
  std::vector<BayesNode> nodes_;
};

/// P(target = target_value | evidence).
struct Query {
  std::string target;
  int target_value = 1;
  std::map<std::string, int> evidence;
};

/**
 * One qubit per node. Root nodes get RY(2 asin(sqrt p)); every other node gets
 * one multi-controlled RY per parent assignment, firing on that assignment.
 * Exact outcome probabilities then equal the network's joint distribution.
 */
Circuit compile_network(const BayesianNetwork &bn);

/// Full joint distribution by enumeration, indexed like basis states. At most 20 nodes.
std::vector<double> joint_distribution(const BayesianNetwork &bn);

/// Enumeration answer; throws NoSupportError when the evidence has zero mass.
double exact_inference(const BayesianNetwork &bn, const Query &query);

struct RejectionResult {
  double estimate = 0.0;
  std::size_t accepted = 0;
  std::size_t shots = 0;
};

/**
 * Samples the compiled circuit `shots` times and keeps the samples consistent
 * with the evidence. Shots are drawn in fixed-size chunks, each from its own
 * stream of `seed`, so the result does not depend on `workers`. Throws
 * NoSupportError when no sample is accepted.
 */
RejectionResult rejection_inference(const BayesianNetwork &bn, const Query &query,
                                    std::size_t shots, std::uint64_t seed, std::size_t workers = 1);

/// {"nodes": [{"name": "A", "parents": [], "cpt": {"": 0.3}}, ...]}; CPT keys are
/// parent bitstrings in parent-list order.
BayesianNetwork network_from_json(const nlohmann::json &j);
nlohmann::json network_to_json(const BayesianNetwork &bn);

} // namespace qmlkit
