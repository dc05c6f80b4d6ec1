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

#include "clusterflow/circuit_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clusterflow {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw std::runtime_error(path + ": " + message);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (required.count(key) == 0 && optional.count(key) == 0) {
      fail(path, "unknown key \"" + key + "\"");
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) fail(path, "missing key \"" + key + "\"");
  }
}

double get_finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

cplx get_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a [re, im] pair");
  return {get_finite_number(v[0], path + "[0]"), get_finite_number(v[1], path + "[1]")};
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

WireDecl parse_wire(const json& v, const std::string& path,
                    std::vector<std::string>& warnings) {
  require_keys(v, path, {"id", "input"}, {});
  WireDecl w;
  w.id = get_string(v["id"], path + ".id");

  const json& input = v["input"];
  require_keys(input, path + ".input", {"amplitudes"}, {});
  const json& amps = input["amplitudes"];
  if (!amps.is_array() || amps.size() != 2) {
    fail(path + ".input.amplitudes", "expected 2 [re, im] pairs");
  }
  w.input[0] = get_complex(amps[0], path + ".input.amplitudes[0]");
  w.input[1] = get_complex(amps[1], path + ".input.amplitudes[1]");

  const double norm = std::sqrt(std::norm(w.input[0]) + std::norm(w.input[1]));
  if (std::abs(norm - 1.0) > 1e-6) {
    fail(path + ".input.amplitudes",
         "state norm " + std::to_string(norm) + " is off unit by more than 1e-6");
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    warnings.push_back(path + ".input.amplitudes: renormalized (norm was " +
                       std::to_string(norm) + ")");
  }
  w.input[0] /= norm;
  w.input[1] /= norm;
  return w;
}

CircuitOp parse_op(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  if (!v.contains("type")) fail(path, "missing key \"type\"");
  const std::string type = get_string(v["type"], path + ".type");

  if (type == "rot") {
    require_keys(v, path, {"type", "wire", "alpha"}, {});
    RotOp op;
    op.wire = get_string(v["wire"], path + ".wire");
    op.alpha = get_finite_number(v["alpha"], path + ".alpha");
    return op;
  }
  if (type == "cz") {
    require_keys(v, path, {"type", "wires"}, {"alphas"});
    const json& wires = v["wires"];
    if (!wires.is_array() || wires.size() != 2) {
      fail(path + ".wires", "expected exactly 2 wire ids");
    }
    JunctionOp op;
    op.wire_a = get_string(wires[0], path + ".wires[0]");
    op.wire_b = get_string(wires[1], path + ".wires[1]");
    if (v.contains("alphas")) {
      const json& alphas = v["alphas"];
      if (!alphas.is_array() || alphas.size() != 2) {
        fail(path + ".alphas", "expected exactly 2 angles");
      }
      op.angles = {get_finite_number(alphas[0], path + ".alphas[0]"),
                   get_finite_number(alphas[1], path + ".alphas[1]")};
    }
    return op;
  }
  fail(path + ".type", "unknown op type \"" + type + "\" (expected \"rot\" or \"cz\")");
}

}  // namespace

ParsedCircuit parse_circuit_json(const nlohmann::json& doc) {
  require_keys(doc, "circuit", {"wires"}, {"ops"});

  ParsedCircuit out;
  const json& wires = doc["wires"];
  if (!wires.is_array() || wires.empty()) {
    fail("circuit.wires", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < wires.size(); ++i) {
    out.circuit.wires.push_back(
        parse_wire(wires[i], "wires[" + std::to_string(i) + "]", out.warnings));
  }
  if (doc.contains("ops")) {
    const json& ops = doc["ops"];
    if (!ops.is_array()) fail("circuit.ops", "expected an array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      out.circuit.ops.push_back(parse_op(ops[i], "ops[" + std::to_string(i) + "]"));
    }
  }
  return out;
}

ParsedCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  try {
    return parse_circuit_json(doc);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

nlohmann::json canonical_circuit_json(const LogicalCircuit& circuit) {
  json doc;
  doc["wires"] = json::array();
  for (const WireDecl& w : circuit.wires) {
    json amps = json::array();
    for (const cplx& a : w.input) {
      amps.push_back(json::array({a.real(), a.imag()}));
    }
    doc["wires"].push_back({{"id", w.id}, {"input", {{"amplitudes", amps}}}});
  }
  doc["ops"] = json::array();
  for (const CircuitOp& op : circuit.ops) {
    if (const RotOp* rot = std::get_if<RotOp>(&op)) {
      doc["ops"].push_back({{"type", "rot"}, {"wire", rot->wire}, {"alpha", rot->alpha}});
    } else {
      const JunctionOp& j = std::get<JunctionOp>(op);
      json entry = {{"type", "cz"}, {"wires", json::array({j.wire_a, j.wire_b})}};
      if (j.angles) {
        entry["alphas"] = json::array({j.angles->first, j.angles->second});
      }
      doc["ops"].push_back(entry);
    }
  }
  return doc;
}

std::string circuit_digest(const LogicalCircuit& circuit) {
  return fnv1a64_hex(canonical_circuit_json(circuit).dump());
}

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace clusterflow
