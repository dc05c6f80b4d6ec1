// Copyright 2026 The clusterflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLUSTERFLOW_CLUSTER_HPP
#define CLUSTERFLOW_CLUSTER_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clusterflow/statevector.hpp"

namespace clusterflow {

/// Role of a node in the entanglement graph. Output wins over Junction when
/// a wire terminates directly on a junction edge.
enum class NodeRole { Input, Body, Junction, Output };

const char* node_role_name(NodeRole role);

struct ClusterNode {
  std::size_t id{0};
  std::string wire;
  std::size_t position{0};
  NodeRole role{NodeRole::Body};
};

/// Entanglement graph: disjoint linear wires plus junction edges bridging
/// them. Node ids are assigned contiguously per wire in creation order, so
/// id arithmetic along a wire is just +-1.
class ClusterGraph {
 public:
  /// Appends a wire of `length` nodes; returns the id of its first node.
  std::size_t add_wire(const std::string& wire, std::size_t length);

  /// Adds a CZ bridge between nodes on two different wires. Each node can
  /// carry at most one junction edge.
  void add_junction(std::size_t node_a, std::size_t node_b);

  std::size_t num_nodes() const { return nodes_.size(); }
  const std::vector<ClusterNode>& nodes() const { return nodes_; }
  const ClusterNode& node(std::size_t id) const;

  bool has_wire(const std::string& wire) const;
  const std::vector<std::string>& wire_order() const { return wire_order_; }
  const std::vector<std::size_t>& wire_nodes(const std::string& wire) const;

  /// Chain neighbors along the node's own wire.
  std::optional<std::size_t> predecessor(std::size_t id) const;
  std::optional<std::size_t> predecessor2(std::size_t id) const;
  /// The node on the other side of this node's junction edge, if any.
  std::optional<std::size_t> junction_partner(std::size_t id) const;

  std::vector<std::pair<std::size_t, std::size_t>> chain_edges() const;
  const std::vector<std::pair<std::size_t, std::size_t>>& junction_edges() const {
    return junctions_;
  }

  /// Structural diagnostics; an empty list means the graph is well formed.
  std::vector<std::string> validate() const;

  /// Applies one CZ per graph edge. CZ is diagonal, so edge order does not
  /// affect the state; a fixed order is kept anyway for reproducibility.
  void entangle(StateVector& state) const;

 private:
  std::vector<ClusterNode> nodes_;
  std::vector<std::string> wire_order_;
  std::map<std::string, std::vector<std::size_t>> wires_;
  std::vector<std::pair<std::size_t, std::size_t>> junctions_;
  std::vector<std::optional<std::size_t>> partner_;
};

}  // namespace clusterflow

#endif  // CLUSTERFLOW_CLUSTER_HPP
