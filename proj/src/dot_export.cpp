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

#include "clusterflow/dot_export.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <vector>

namespace clusterflow {

namespace {

/// Shortest stable decimal form; locale-independent via the C format engine.
std::string format_angle(double angle) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", angle);
  return buf;
}

std::string node_name(std::size_t id) { return "q" + std::to_string(id); }

}  // namespace

std::string export_dot(const ClusterGraph& graph, const MeasurementPattern& pattern) {
  std::map<std::size_t, double> angle_of;
  for (const MeasureStep& s : pattern.steps) angle_of[s.qubit] = s.angle;

  std::string out;
  out += "digraph cluster_flow {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=ellipse];\n";

  std::vector<std::size_t> order;
  for (const ClusterNode& n : graph.nodes()) order.push_back(n.id);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ClusterNode& na = graph.node(a);
    const ClusterNode& nb = graph.node(b);
    if (na.wire != nb.wire) return na.wire < nb.wire;
    return na.position < nb.position;
  });
  for (std::size_t id : order) {
    const ClusterNode& n = graph.node(id);
    std::string label = node_name(id) + "\\n" + n.wire + "[" +
                        std::to_string(n.position) + "] " + node_role_name(n.role);
    if (auto it = angle_of.find(id); it != angle_of.end()) {
      label += "\\nalpha=" + format_angle(it->second);
    }
    out += "  " + node_name(id) + " [label=\"" + label + "\"];\n";
  }

  for (const auto& [a, b] : graph.chain_edges()) {
    out += "  " + node_name(a) + " -> " + node_name(b) + " [dir=none];\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> junctions = graph.junction_edges();
  for (auto& [a, b] : junctions) {
    if (a > b) std::swap(a, b);
  }
  std::sort(junctions.begin(), junctions.end());
  for (const auto& [a, b] : junctions) {
    out += "  " + node_name(a) + " -> " + node_name(b) + " [dir=none];\n";
  }

  auto dep_edges = [&out](const std::vector<std::size_t>& deps, std::size_t target,
                          const char* label) {
    for (std::size_t d : deps) {
      out += "  " + node_name(d) + " -> " + node_name(target) +
             " [style=dashed, label=\"" + label + "\"];\n";
    }
  };
  for (const MeasureStep& s : pattern.steps) {
    dep_edges(s.sign_deps, s.qubit, "sign");
    dep_edges(s.flip_deps, s.qubit, "flip");
  }
  for (const OutputCorrection& c : pattern.corrections) {
    dep_edges(c.x_deps, c.qubit, "X");
    dep_edges(c.z_deps, c.qubit, "Z");
  }
  out += "}\n";
  return out;
}

}  // namespace clusterflow
