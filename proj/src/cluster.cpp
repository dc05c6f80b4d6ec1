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

#include "clusterflow/cluster.hpp"

#include <stdexcept>
#include <string>

namespace clusterflow {

const char* node_role_name(NodeRole role) {
  switch (role) {
    case NodeRole::Input:
      return "input";
    case NodeRole::Body:
      return "body";
    case NodeRole::Junction:
      return "junction";
    case NodeRole::Output:
      return "output";
  }
  return "unknown";
}

std::size_t ClusterGraph::add_wire(const std::string& wire, std::size_t length) {
  if (wire.empty()) throw std::invalid_argument("wire id must be non-empty");
  if (length == 0) throw std::invalid_argument("wire " + wire + " must have at least one node");
  if (wires_.count(wire) != 0) throw std::invalid_argument("duplicate wire id " + wire);

  const std::size_t first = nodes_.size();
  std::vector<std::size_t> ids;
  ids.reserve(length);
  for (std::size_t pos = 0; pos < length; ++pos) {
    NodeRole role = NodeRole::Body;
    if (pos + 1 == length) {
      role = NodeRole::Output;
    } else if (pos == 0) {
      role = NodeRole::Input;
    }
    nodes_.push_back(ClusterNode{first + pos, wire, pos, role});
    partner_.push_back(std::nullopt);
    ids.push_back(first + pos);
  }
  wire_order_.push_back(wire);
  wires_.emplace(wire, std::move(ids));
  return first;
}

const ClusterNode& ClusterGraph::node(std::size_t id) const {
  if (id >= nodes_.size()) {
    throw std::invalid_argument("node id " + std::to_string(id) + " out of range");
  }
  return nodes_[id];
}

bool ClusterGraph::has_wire(const std::string& wire) const {
  return wires_.count(wire) != 0;
}

const std::vector<std::size_t>& ClusterGraph::wire_nodes(const std::string& wire) const {
  auto it = wires_.find(wire);
  if (it == wires_.end()) throw std::invalid_argument("unknown wire id " + wire);
  return it->second;
}

void ClusterGraph::add_junction(std::size_t node_a, std::size_t node_b) {
  const ClusterNode& a = node(node_a);
  const ClusterNode& b = node(node_b);
  if (a.wire == b.wire) {
    throw std::invalid_argument("junction edge must connect distinct wires, got " +
                                a.wire + " twice");
  }
  if (partner_[node_a] || partner_[node_b]) {
    throw std::invalid_argument("node already carries a junction edge");
  }
  partner_[node_a] = node_b;
  partner_[node_b] = node_a;
  for (std::size_t id : {node_a, node_b}) {
    if (nodes_[id].role != NodeRole::Output) nodes_[id].role = NodeRole::Junction;
  }
  junctions_.emplace_back(node_a, node_b);
}

std::optional<std::size_t> ClusterGraph::predecessor(std::size_t id) const {
  const ClusterNode& n = node(id);
  if (n.position == 0) return std::nullopt;
  return id - 1;
}

std::optional<std::size_t> ClusterGraph::predecessor2(std::size_t id) const {
  const ClusterNode& n = node(id);
  if (n.position < 2) return std::nullopt;
  return id - 2;
}

std::optional<std::size_t> ClusterGraph::junction_partner(std::size_t id) const {
  node(id);  // range check
  return partner_[id];
}

std::vector<std::pair<std::size_t, std::size_t>> ClusterGraph::chain_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const std::string& w : wire_order_) {
    const auto& ids = wires_.at(w);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      edges.emplace_back(ids[i], ids[i + 1]);
    }
  }
  return edges;
}

std::vector<std::string> ClusterGraph::validate() const {
  std::vector<std::string> diags;
  if (nodes_.empty()) {
    diags.push_back("graph has no nodes");
    return diags;
  }
  for (const auto& [a, b] : junctions_) {
    if (nodes_[a].wire == nodes_[b].wire) {
      diags.push_back("junction edge (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") stays on wire " + nodes_[a].wire);
    }
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const bool in_edge = partner_[id].has_value();
    const NodeRole role = nodes_[id].role;
    if (role == NodeRole::Junction && !in_edge) {
      diags.push_back("node " + std::to_string(id) +
                      " has junction role but no junction edge");
    }
    if (in_edge && role != NodeRole::Junction && role != NodeRole::Output) {
      diags.push_back("node " + std::to_string(id) +
                      " carries a junction edge but has role " +
                      node_role_name(role));
    }
  }
  // Spacing: nodes carrying junction edges must not be chain neighbors.
  // The feedforward rules route a junction's cross dependency through the
  // partner's chain predecessor, which adjacent junctions would alias.
  for (const std::string& w : wire_order_) {
    const auto& ids = wires_.at(w);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      if (partner_[ids[i]] && partner_[ids[i + 1]]) {
        diags.push_back("wire " + w + " has adjacent junction nodes " +
                        std::to_string(ids[i]) + " and " + std::to_string(ids[i + 1]));
      }
    }
  }
  return diags;
}

void ClusterGraph::entangle(StateVector& state) const {
  if (state.num_qubits() != nodes_.size()) {
    throw std::invalid_argument("register size does not match graph node count");
  }
  for (const auto& [a, b] : chain_edges()) {
    state.apply(Gate::cz(), a, b);
  }
  for (const auto& [a, b] : junctions_) {
    state.apply(Gate::cz(), a, b);
  }
}

}  // namespace clusterflow
