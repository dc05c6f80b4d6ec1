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

#ifndef CLUSTERFLOW_CIRCUIT_IO_HPP
#define CLUSTERFLOW_CIRCUIT_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "clusterflow/compiler.hpp"

namespace clusterflow {

struct ParsedCircuit {
  LogicalCircuit circuit;
  /// Non-fatal findings, e.g. inputs that needed renormalization.
  std::vector<std::string> warnings;
};

/// Parses the circuit document. Shape errors (wrong types, unknown keys,
/// missing fields, inputs off normalization by more than 1e-6) throw with
/// the offending field's path; inputs within 1e-6 of unit norm are
/// renormalized with a warning.
ParsedCircuit parse_circuit_json(const nlohmann::json& doc);

/// Reads and parses a circuit file; file and JSON errors carry the path.
ParsedCircuit load_circuit_file(const std::string& path);

/// Canonical JSON form of a parsed circuit (sorted keys, renormalized
/// amplitudes); the digest input.
nlohmann::json canonical_circuit_json(const LogicalCircuit& circuit);

/// Stable content id of a circuit: "fnv1a64:" + 16 hex digits over the
/// canonical JSON text.
std::string circuit_digest(const LogicalCircuit& circuit);

std::string fnv1a64_hex(const std::string& data);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_CIRCUIT_IO_HPP
