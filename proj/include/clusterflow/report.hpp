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

#ifndef CLUSTERFLOW_REPORT_HPP
#define CLUSTERFLOW_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterflow/verify.hpp"

namespace clusterflow {

/// Verification run report. `mode` is "exhaustive" (records cover every
/// outcome branch; probabilities must sum to 1) or "sample" (records are
/// seeded draws; the sum check does not apply). The verdict is "pass" iff
/// every record's fidelity is >= 1 - tolerance and, in exhaustive mode, the
/// probability sum is within tolerance of 1.
struct ReportInputs {
  std::string mode;
  std::uint64_t seed{0};
  std::string circuit_digest;
  double tolerance{1e-9};
  std::vector<std::size_t> measured_qubits;  // schedule order, labels the bits
  std::vector<std::size_t> output_qubits;    // wire order
  std::vector<BranchRecord> records;
};

nlohmann::json build_report(const ReportInputs& inputs);

bool report_passes(const nlohmann::json& report);

/// Serialization used everywhere a report leaves the process; one fixed
/// format so byte-level comparisons are meaningful.
std::string report_text(const nlohmann::json& report);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_REPORT_HPP
