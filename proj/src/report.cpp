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

#include "clusterflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clusterflow {

using nlohmann::json;

json build_report(const ReportInputs& inputs) {
  if (inputs.mode != "exhaustive" && inputs.mode != "sample") {
    throw std::invalid_argument("report mode must be \"exhaustive\" or \"sample\"");
  }

  json branches = json::array();
  double min_fidelity = 1.0;
  double max_fidelity = 0.0;
  double probability_sum = 0.0;
  for (const BranchRecord& rec : inputs.records) {
    branches.push_back({{"bits", rec.bits},
                        {"probability", rec.probability},
                        {"fidelity", rec.fidelity}});
    min_fidelity = std::min(min_fidelity, rec.fidelity);
    max_fidelity = std::max(max_fidelity, rec.fidelity);
    probability_sum += rec.probability;
  }

  bool pass = !inputs.records.empty() && min_fidelity >= 1.0 - inputs.tolerance;
  json aggregate = {{"branch_count", inputs.records.size()},
                    {"min_fidelity", min_fidelity},
                    {"max_fidelity", max_fidelity}};
  if (inputs.mode == "exhaustive") {
    aggregate["probability_sum"] = probability_sum;
    pass = pass && std::abs(probability_sum - 1.0) <= inputs.tolerance;
  }

  return json{{"schema", "clusterflow-report-v1"},
              {"mode", inputs.mode},
              {"seed", inputs.seed},
              {"circuit_digest", inputs.circuit_digest},
              {"tolerance", inputs.tolerance},
              {"measured_qubits", inputs.measured_qubits},
              {"output_qubits", inputs.output_qubits},
              {"branches", branches},
              {"aggregate", aggregate},
              {"verdict", pass ? "pass" : "fail"}};
}

bool report_passes(const json& report) {
  return report.contains("verdict") && report["verdict"] == "pass";
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

}  // namespace clusterflow
