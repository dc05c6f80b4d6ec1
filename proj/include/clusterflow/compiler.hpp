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

#ifndef CLUSTERFLOW_COMPILER_HPP
#define CLUSTERFLOW_COMPILER_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "clusterflow/cluster.hpp"
#include "clusterflow/flow.hpp"
#include "clusterflow/matrix.hpp"

namespace clusterflow {

/// One logical wire: a named qubit with its input state.
struct WireDecl {
  std::string id;
  std::array<cplx, 2> input{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
};

/// Logical single-qubit op H * Zrot(alpha) on one wire.
struct RotOp {
  std::string wire;
  double alpha{0.0};
};

/// Logical CZ between two wires. With angles, each wire additionally gets
/// H * Zrot(angle) after the CZ and the computation continues; without
/// angles the CZ is terminal and both wires end on the junction nodes.
struct JunctionOp {
  std::string wire_a;
  std::string wire_b;
  std::optional<std::pair<double, double>> angles;
};

using CircuitOp = std::variant<RotOp, JunctionOp>;

struct LogicalCircuit {
  std::vector<WireDecl> wires;
  std::vector<CircuitOp> ops;
};

/// Reference semantics of a compiled circuit: ops in order with wires mapped
/// to tensor slots (slot i = i-th declared wire, least significant index
/// bits first), plus the logical input product state.
struct OracleRot {
  std::size_t slot{0};
  double alpha{0.0};
};
struct OracleJunction {
  std::size_t slot_a{0};
  std::size_t slot_b{0};
  std::optional<std::pair<double, double>> angles;
};
using OracleOp = std::variant<OracleRot, OracleJunction>;

struct OracleSpec {
  std::vector<std::string> wire_order;
  std::vector<std::array<cplx, 2>> inputs;
  std::vector<OracleOp> ops;
};

struct CompiledPattern {
  ClusterGraph graph;
  MeasurementPattern pattern;
  OracleSpec oracle;
};

/// Circuit-level diagnostics (unknown wires, non-finite angles, ops after a
/// terminal junction, junction spacing). Empty list means compilable.
std::vector<std::string> validate_circuit(const LogicalCircuit& circuit);

/// Lowers a logical circuit to a cluster graph, a measurement pattern with
/// its classical dependencies, and the oracle spec recording the intended
/// semantics. Deterministic: equal circuits yield identical patterns.
CompiledPattern compile(const LogicalCircuit& circuit);

/// Map wire id -> input state, as execute() expects.
std::map<std::string, std::array<cplx, 2>> circuit_inputs(const LogicalCircuit& circuit);

/// Wraps an angle to the canonical interval (-pi, pi].
double wrap_angle(double angle);

/// U = e^{i global_phase} * Zrot(a) * Xrot(b) * Zrot(c), angles in (-pi, pi]
/// with b in [0, pi]. Near b = 0 or pi the split between a and c is not
/// unique; c is pinned to 0 there so results are reproducible.
struct UnitaryDecomposition {
  double global_phase{0.0};
  double a{0.0};
  double b{0.0};
  double c{0.0};
};

/// Decomposes a 2x2 unitary (within `tol` of unitary, else throws).
UnitaryDecomposition euler_decompose(const CMatrix& u, double tol = 1e-8);

CMatrix reconstruct(const UnitaryDecomposition& d);

/// Measurement angles (alpha1, alpha2, alpha3), in measurement order, such
/// that HZ(alpha3) * HZ(alpha2) * HZ(alpha1) = U up to a global phase.
std::array<double, 3> chain_angles(const CMatrix& u, double tol = 1e-8);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_COMPILER_HPP
