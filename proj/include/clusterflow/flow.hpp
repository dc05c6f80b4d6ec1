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

#ifndef CLUSTERFLOW_FLOW_HPP
#define CLUSTERFLOW_FLOW_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "clusterflow/cluster.hpp"
#include "clusterflow/statevector.hpp"

namespace clusterflow {

/// One scheduled measurement. Earlier outcomes feed in through two classical
/// channels: sign_deps flip the measurement angle, flip_deps insert an X
/// right before the meter.
struct MeasureStep {
  std::size_t qubit{0};
  double angle{0.0};
  std::vector<std::size_t> sign_deps;
  std::vector<std::size_t> flip_deps;
};

/// Byproduct removal on an output qubit: Z^z then X^x, with each exponent
/// the parity of the listed outcomes.
struct OutputCorrection {
  std::size_t qubit{0};
  std::vector<std::size_t> x_deps;
  std::vector<std::size_t> z_deps;
};

struct MeasurementPattern {
  std::vector<MeasureStep> steps;  // schedule order
  std::vector<OutputCorrection> corrections;
};

/// Outcome record of a run, ordered by schedule.
class OutcomeLog {
 public:
  struct Entry {
    std::size_t qubit{0};
    int bit{0};
    double probability{0.0};
  };

  void record(std::size_t qubit, int bit, double probability);
  bool has(std::size_t qubit) const;
  int bit(std::size_t qubit) const;
  /// XOR of the recorded bits of `deps`; throws on an unrecorded qubit.
  int parity(const std::vector<std::size_t>& deps) const;
  const std::vector<Entry>& entries() const { return entries_; }
  double branch_probability() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::size_t, std::size_t> index_;
};

/// Angle actually measured: the nominal angle, negated when the sign parity
/// is odd.
double effective_angle(const MeasureStep& step, const OutcomeLog& log);

/// Runs one measurement: Zrot(effective angle), H, optional pre-meter X from
/// the flip parity, then a Z measurement. Records the outcome.
MeasureResult execute_step(StateVector& state, const MeasureStep& step,
                           OutcomeLog& log, const MeasurePolicy& policy,
                           std::mt19937_64& rng);

void apply_output_corrections(StateVector& state,
                              const std::vector<OutputCorrection>& corrections,
                              const OutcomeLog& log);

/// Checks a pattern against its graph: full coverage (every non-output node
/// measured exactly once, every output corrected exactly once), schedule
/// order (dependencies resolve to earlier steps), and locality (each
/// dependency is the target's chain predecessor, its second predecessor, or
/// the chain predecessor of its junction partner, per channel). Empty list
/// means the pattern is well formed.
std::vector<std::string> check_pattern(const MeasurementPattern& pattern,
                                       const ClusterGraph& graph);

struct SampleAll {};
struct ForceBits {
  std::vector<int> bits;  // schedule order
};
using RunPolicy = std::variant<SampleAll, ForceBits>;

struct RunResult {
  OutcomeLog outcomes;
  StateVector state;
  double branch_probability{1.0};
  std::uint64_t seed{0};
};

/// Full pattern run: initialize inputs (one single-qubit state per wire,
/// applied to the wire's first node; remaining nodes start in |+>), entangle,
/// execute the schedule, correct outputs. Validates graph and pattern first.
RunResult execute(const ClusterGraph& graph, const MeasurementPattern& pattern,
                  const std::map<std::string, std::array<cplx, 2>>& wire_inputs,
                  const RunPolicy& policy, std::uint64_t seed);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_FLOW_HPP
