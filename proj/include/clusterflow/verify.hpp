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

#ifndef CLUSTERFLOW_VERIFY_HPP
#define CLUSTERFLOW_VERIFY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "clusterflow/compiler.hpp"
#include "clusterflow/flow.hpp"

namespace clusterflow {

/// Matrix construction is refused above this wire count (2^12 = 4096 rows).
inline constexpr std::size_t kMaxOracleWires = 12;
/// Exhaustive branch enumeration is refused above this measurement count.
inline constexpr std::size_t kMaxEnumeratedSteps = 20;

/// Dense unitary of the logical circuit: the product of the per-op matrices
/// in order. Rot is H*Zrot(alpha) on its slot; a junction with angles is
/// (H*Zrot x H*Zrot)*CZ on its slots; a terminal junction is CZ.
CMatrix oracle_unitary(const OracleSpec& spec);

/// The oracle applied to the declared input product state. Works past the
/// matrix wire limit by applying ops to the vector directly.
std::vector<cplx> oracle_output(const OracleSpec& spec);

/// Output-qubit state of a fully executed run, as a vector over the logical
/// wires (wire slot i = graph wire order i). Exact extraction: measured
/// qubits are collapsed, so the register factors and slicing at the
/// collapsed bits is the output state.
std::vector<cplx> logical_output(const StateVector& state, const ClusterGraph& graph);

struct BranchRecord {
  std::vector<int> bits;  // forced outcomes in schedule order
  double probability{0.0};
  double fidelity{0.0};
  cplx overlap{0.0, 0.0};  // raw <oracle output|branch output>
};

struct BranchReport {
  std::vector<BranchRecord> branches;
  double min_fidelity{1.0};
  double max_fidelity{0.0};
  double probability_sum{0.0};
  std::size_t num_steps{0};
};

/// Runs the pattern once per forced-outcome assignment and compares each
/// corrected output against the oracle output (or `expected_logical` when
/// given, e.g. a target unitary applied to the input). Comparison tensors
/// the expected output with the collapsed meter states, so it covers the
/// full register.
BranchReport enumerate_branches(const ClusterGraph& graph,
                                const MeasurementPattern& pattern,
                                const std::map<std::string, std::array<cplx, 2>>& inputs,
                                const OracleSpec& spec,
                                const std::vector<cplx>* expected_logical = nullptr);

struct AblationRecord {
  std::string removed;
  double min_pair_fidelity{1.0};
};

/// Re-enumerates the pattern once per single removed dependency and reports
/// the worst branch-pair fidelity of the outputs. A healthy pattern is
/// deterministic (all pairs at fidelity 1); a working dependency, once
/// removed, must drag some pair down.
std::vector<AblationRecord> ablation_scan(
    const ClusterGraph& graph, const MeasurementPattern& pattern,
    const std::map<std::string, std::array<cplx, 2>>& inputs, const OracleSpec& spec);

/// Walks every outcome prefix and returns the largest |p - 0.5| over all
/// single-step Born probabilities. Cluster measurements are unbiased coin
/// flips regardless of angles or inputs; this checks that step by step, not
/// just on branch products.
double max_uniformity_deviation(const ClusterGraph& graph,
                                const MeasurementPattern& pattern,
                                const std::map<std::string, std::array<cplx, 2>>& inputs);

struct IdentityResiduals {
  /// (HZ_a x I) CZ (Z x I) vs (X x I) (HZ_a x I) CZ
  double z_to_premeter_x{0.0};
  /// (HZ_a x I) CZ (X x I) vs (Z x Z) (HZ_-a x I) CZ
  double x_to_sign_flip{0.0};
  /// Outcome-wise removal of the Z on the measured qubit: projecting the
  /// (Z x Z)-bearing side onto outcome s equals (-1)^s (I x Z) times the
  /// projection without it, for both s.
  double measured_z_removal{0.0};

  double max() const;
};

/// Residuals of the gate-pushing identities behind the feedforward rules,
/// computed on 4x4 matrices directly, independent of the simulator.
IdentityResiduals deformation_residuals(double alpha);

/// ZX = -XZ as matrices, and phase-insensitive state comparison treats
/// psi and -psi as equal.
bool anticommutation_sign_check();

}  // namespace clusterflow

#endif  // CLUSTERFLOW_VERIFY_HPP
