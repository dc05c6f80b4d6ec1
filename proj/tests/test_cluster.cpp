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

#include <cmath>

#include <doctest.h>

#include "clusterflow/cluster.hpp"

using namespace clusterflow;

namespace {

// Two three-node wires bridged at their middle nodes: q0 q1 q2 / q3 q4 q5
// with junction (q1, q4).
ClusterGraph hbranch_graph() {
  ClusterGraph g;
  g.add_wire("a", 3);
  g.add_wire("b", 3);
  g.add_junction(1, 4);
  return g;
}

}  // namespace

TEST_CASE("wires assign contiguous ids and endpoint roles") {
  ClusterGraph g;
  CHECK(g.add_wire("w0", 3) == 0);
  CHECK(g.add_wire("w1", 2) == 3);
  CHECK(g.num_nodes() == 5);

  CHECK(g.node(0).role == NodeRole::Input);
  CHECK(g.node(1).role == NodeRole::Body);
  CHECK(g.node(2).role == NodeRole::Output);
  CHECK(g.node(3).role == NodeRole::Input);
  CHECK(g.node(4).role == NodeRole::Output);

  CHECK(g.node(4).wire == "w1");
  CHECK(g.node(4).position == 1);
  CHECK(g.wire_order() == std::vector<std::string>{"w0", "w1"});
  CHECK(g.wire_nodes("w1") == std::vector<std::size_t>{3, 4});
  CHECK(g.has_wire("w0"));
  CHECK_FALSE(g.has_wire("w9"));
}

TEST_CASE("a single-node wire is pure output") {
  ClusterGraph g;
  g.add_wire("w", 1);
  CHECK(g.node(0).role == NodeRole::Output);
}

TEST_CASE("wire construction rejects bad arguments") {
  ClusterGraph g;
  g.add_wire("w", 2);
  CHECK_THROWS_AS(g.add_wire("w", 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_wire("", 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_wire("v", 0), std::invalid_argument);
  CHECK_THROWS_AS(g.node(5), std::invalid_argument);
  CHECK_THROWS_AS(g.wire_nodes("v"), std::invalid_argument);
}

TEST_CASE("junction edges bridge wires and promote roles") {
  const ClusterGraph g = hbranch_graph();
  CHECK(g.node(1).role == NodeRole::Junction);
  CHECK(g.node(4).role == NodeRole::Junction);
  CHECK(g.junction_partner(1) == 4);
  CHECK(g.junction_partner(4) == 1);
  CHECK_FALSE(g.junction_partner(0).has_value());
  CHECK(g.junction_edges() ==
        std::vector<std::pair<std::size_t, std::size_t>>{{1, 4}});
}

TEST_CASE("an output keeps its role when it lands on a junction") {
  ClusterGraph g;
  g.add_wire("a", 2);
  g.add_wire("b", 2);
  g.add_junction(1, 3);  // both are wire outputs
  CHECK(g.node(1).role == NodeRole::Output);
  CHECK(g.node(3).role == NodeRole::Output);
  CHECK(g.junction_partner(1) == 3);
  CHECK(g.validate().empty());
}

TEST_CASE("junction construction rejects bad edges") {
  ClusterGraph g;
  g.add_wire("a", 3);
  g.add_wire("b", 3);
  CHECK_THROWS_AS(g.add_junction(0, 1), std::invalid_argument);  // same wire
  g.add_junction(1, 4);
  CHECK_THROWS_AS(g.add_junction(1, 5), std::invalid_argument);  // node 1 taken
}

TEST_CASE("chain neighbors follow wire positions") {
  const ClusterGraph g = hbranch_graph();
  CHECK_FALSE(g.predecessor(0).has_value());
  CHECK(g.predecessor(1) == 0);
  CHECK(g.predecessor(2) == 1);
  CHECK_FALSE(g.predecessor(3).has_value());  // new wire restarts the chain
  CHECK(g.predecessor(4) == 3);

  CHECK_FALSE(g.predecessor2(0).has_value());
  CHECK_FALSE(g.predecessor2(1).has_value());
  CHECK(g.predecessor2(2) == 0);
  CHECK(g.predecessor2(5) == 3);
}

TEST_CASE("chain edges walk each wire in order") {
  const ClusterGraph g = hbranch_graph();
  const std::vector<std::pair<std::size_t, std::size_t>> expected{
      {0, 1}, {1, 2}, {3, 4}, {4, 5}};
  CHECK(g.chain_edges() == expected);
}

TEST_CASE("validate flags adjacent junction nodes") {
  ClusterGraph g;
  g.add_wire("a", 4);
  g.add_wire("b", 3);
  g.add_wire("c", 3);
  g.add_junction(1, 5);
  g.add_junction(2, 8);  // nodes 1 and 2 are chain neighbors on wire a
  const std::vector<std::string> diags = g.validate();
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("adjacent junction nodes 1 and 2") != std::string::npos);
}

TEST_CASE("validate accepts the well-formed graphs used everywhere else") {
  CHECK(hbranch_graph().validate().empty());
  ClusterGraph chain;
  chain.add_wire("w", 4);
  CHECK(chain.validate().empty());
  ClusterGraph empty;
  CHECK_FALSE(empty.validate().empty());
}

TEST_CASE("entangle applies one cz per edge") {
  ClusterGraph g;
  g.add_wire("w", 2);
  StateVector state = StateVector::init_register(2, {});
  g.entangle(state);
  CHECK(std::abs(state.amplitudes()[0] - cplx{0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(state.amplitudes()[1] - cplx{0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(state.amplitudes()[2] - cplx{0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(state.amplitudes()[3] + cplx{0.5, 0.0}) <= 1e-15);

  StateVector wrong = StateVector::init_register(3, {});
  CHECK_THROWS_AS(g.entangle(wrong), std::invalid_argument);
}

TEST_CASE("entangle includes junction edges") {
  const ClusterGraph g = hbranch_graph();
  StateVector with = StateVector::init_register(6, {});
  g.entangle(with);

  // Rebuild by hand: chain edges then the bridge.
  StateVector manual = StateVector::init_register(6, {});
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {3, 4}, {4, 5}}) {
    manual.apply(Gate::cz(), a, b);
  }
  manual.apply(Gate::cz(), 1, 4);
  const PhaseComparison cmp = equal_up_to_global_phase(with, manual, 1e-12);
  CHECK(cmp.equal);
}

TEST_CASE("role names are stable") {
  CHECK(std::string(node_role_name(NodeRole::Input)) == "input");
  CHECK(std::string(node_role_name(NodeRole::Body)) == "body");
  CHECK(std::string(node_role_name(NodeRole::Junction)) == "junction");
  CHECK(std::string(node_role_name(NodeRole::Output)) == "output");
}
