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

#include "clusterflow/compiler.hpp"

#include <cmath>
#include <stdexcept>

namespace clusterflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Below this off-diagonal magnitude the middle Euler angle is treated as
/// degenerate; the leftover split error is far inside the 1e-10 budget.
constexpr double kGimbalTol = 1e-12;

std::string join_diagnostics(const std::vector<std::string>& diags) {
  std::string out;
  for (const std::string& d : diags) {
    if (!out.empty()) out += "; ";
    out += d;
  }
  return out;
}

/// Classical dependencies of a measurement on `id`, read off the graph: the
/// chain predecessor flips the angle sign; the second predecessor and (for
/// junction nodes) the partner's predecessor flip the meter.
MeasureStep make_step(const ClusterGraph& graph, std::size_t id, double angle) {
  MeasureStep s;
  s.qubit = id;
  s.angle = wrap_angle(angle);
  if (auto p = graph.predecessor(id)) s.sign_deps.push_back(*p);
  if (auto p = graph.predecessor2(id)) s.flip_deps.push_back(*p);
  if (auto partner = graph.junction_partner(id)) {
    if (auto p = graph.predecessor(*partner)) s.flip_deps.push_back(*p);
  }
  return s;
}

/// Byproduct removal on an output, same channel layout: predecessor feeds X,
/// second predecessor and (for outputs on a junction edge) the partner's
/// predecessor feed Z.
OutputCorrection make_correction(const ClusterGraph& graph, std::size_t id) {
  OutputCorrection c;
  c.qubit = id;
  if (auto p = graph.predecessor(id)) c.x_deps.push_back(*p);
  if (auto p = graph.predecessor2(id)) c.z_deps.push_back(*p);
  if (auto partner = graph.junction_partner(id)) {
    if (auto p = graph.predecessor(*partner)) c.z_deps.push_back(*p);
  }
  return c;
}

bool finite_state(const std::array<cplx, 2>& amps) {
  for (const cplx& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return true;
}

}  // namespace

double wrap_angle(double angle) {
  double t = std::fmod(angle + kPi, 2.0 * kPi);
  if (t <= 0.0) t += 2.0 * kPi;
  return t - kPi;
}

std::vector<std::string> validate_circuit(const LogicalCircuit& circuit) {
  std::vector<std::string> diags;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < circuit.wires.size(); ++i) {
    const WireDecl& w = circuit.wires[i];
    if (w.id.empty()) {
      diags.push_back("wires[" + std::to_string(i) + "] has an empty id");
      continue;
    }
    if (!slot.emplace(w.id, i).second) {
      diags.push_back("duplicate wire id " + w.id);
    }
    if (!finite_state(w.input)) {
      diags.push_back("wires[" + std::to_string(i) + "] input has non-finite amplitudes");
    }
  }
  if (circuit.wires.empty()) {
    diags.push_back("circuit declares no wires");
    return diags;
  }

  // closed_by[w]: op index of the terminal junction that ended wire w.
  // last_junction[w]: most recent junction op on w with no rot since; a
  // second junction then would sit on the chain neighbor, which the
  // feedforward rules cannot route around.
  std::map<std::string, std::size_t> closed_by;
  std::map<std::string, std::size_t> last_junction;
  for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
    const CircuitOp& op = circuit.ops[k];
    const auto where = "ops[" + std::to_string(k) + "]";
    if (const RotOp* rot = std::get_if<RotOp>(&op)) {
      if (slot.count(rot->wire) == 0) {
        diags.push_back(where + " references unknown wire " + rot->wire);
        continue;
      }
      if (!std::isfinite(rot->alpha)) {
        diags.push_back(where + " has a non-finite angle");
      }
      if (auto it = closed_by.find(rot->wire); it != closed_by.end()) {
        diags.push_back(where + " touches wire " + rot->wire +
                        " after its terminal junction at ops[" +
                        std::to_string(it->second) + "]");
      }
      last_junction.erase(rot->wire);
      continue;
    }
    const JunctionOp& j = std::get<JunctionOp>(op);
    if (j.wire_a == j.wire_b) {
      diags.push_back(where + " joins wire " + j.wire_a + " with itself");
      continue;
    }
    bool wires_ok = true;
    for (const std::string& w : {j.wire_a, j.wire_b}) {
      if (slot.count(w) == 0) {
        diags.push_back(where + " references unknown wire " + w);
        wires_ok = false;
      }
    }
    if (!wires_ok) continue;
    if (j.angles) {
      if (!std::isfinite(j.angles->first) || !std::isfinite(j.angles->second)) {
        diags.push_back(where + " has a non-finite angle");
      }
    }
    for (const std::string& w : {j.wire_a, j.wire_b}) {
      if (auto it = closed_by.find(w); it != closed_by.end()) {
        diags.push_back(where + " touches wire " + w +
                        " after its terminal junction at ops[" +
                        std::to_string(it->second) + "]");
        continue;
      }
      if (auto it = last_junction.find(w); it != last_junction.end()) {
        diags.push_back("junction ops[" + std::to_string(it->second) + "] and ops[" +
                        std::to_string(k) + "] are adjacent on wire " + w +
                        "; a rotation between them is required");
      }
      last_junction[w] = k;
      if (!j.angles) closed_by[w] = k;
    }
  }
  return diags;
}

std::map<std::string, std::array<cplx, 2>> circuit_inputs(const LogicalCircuit& circuit) {
  std::map<std::string, std::array<cplx, 2>> inputs;
  for (const WireDecl& w : circuit.wires) inputs[w.id] = w.input;
  return inputs;
}

CompiledPattern compile(const LogicalCircuit& circuit) {
  if (auto diags = validate_circuit(circuit); !diags.empty()) {
    throw std::invalid_argument("invalid circuit: " + join_diagnostics(diags));
  }

  std::map<std::string, std::size_t> slot;
  std::map<std::string, std::size_t> length;
  for (std::size_t i = 0; i < circuit.wires.size(); ++i) {
    slot[circuit.wires[i].id] = i;
    length[circuit.wires[i].id] = 1;
  }
  for (const CircuitOp& op : circuit.ops) {
    if (const RotOp* rot = std::get_if<RotOp>(&op)) {
      length[rot->wire] += 1;
    } else {
      const JunctionOp& j = std::get<JunctionOp>(op);
      if (j.angles) {
        length[j.wire_a] += 1;
        length[j.wire_b] += 1;
      }
    }
  }

  CompiledPattern cp;
  std::map<std::string, std::size_t> front;  // next unmeasured position per wire
  for (const WireDecl& w : circuit.wires) {
    cp.graph.add_wire(w.id, length[w.id]);
    front[w.id] = 0;
    cp.oracle.wire_order.push_back(w.id);
    cp.oracle.inputs.push_back(w.input);
  }

  auto front_node = [&](const std::string& wire) {
    return cp.graph.wire_nodes(wire)[front[wire]];
  };

  for (const CircuitOp& op : circuit.ops) {
    if (const RotOp* rot = std::get_if<RotOp>(&op)) {
      const std::size_t q = front_node(rot->wire);
      cp.pattern.steps.push_back(make_step(cp.graph, q, rot->alpha));
      front[rot->wire] += 1;
      cp.oracle.ops.push_back(OracleRot{slot[rot->wire], wrap_angle(rot->alpha)});
      continue;
    }
    const JunctionOp& j = std::get<JunctionOp>(op);
    const std::size_t qa = front_node(j.wire_a);
    const std::size_t qb = front_node(j.wire_b);
    cp.graph.add_junction(qa, qb);
    std::optional<std::pair<double, double>> wrapped;
    if (j.angles) {
      cp.pattern.steps.push_back(make_step(cp.graph, qa, j.angles->first));
      cp.pattern.steps.push_back(make_step(cp.graph, qb, j.angles->second));
      front[j.wire_a] += 1;
      front[j.wire_b] += 1;
      wrapped = {wrap_angle(j.angles->first), wrap_angle(j.angles->second)};
    }
    cp.oracle.ops.push_back(OracleJunction{slot[j.wire_a], slot[j.wire_b], wrapped});
  }

  for (const WireDecl& w : circuit.wires) {
    const std::size_t out = cp.graph.wire_nodes(w.id).back();
    cp.pattern.corrections.push_back(make_correction(cp.graph, out));
  }
  return cp;
}

UnitaryDecomposition euler_decompose(const CMatrix& u, double tol) {
  if (u.dim() != 2) {
    throw std::invalid_argument("decomposition needs a 2x2 matrix, got dimension " +
                                std::to_string(u.dim()));
  }
  const double dev = u.unitarity_deviation();
  if (dev > tol) {
    throw std::invalid_argument("matrix is not unitary (deviation " +
                                std::to_string(dev) + ")");
  }

  const cplx det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
  const cplx su_scale = std::polar(1.0, -std::arg(det) / 2.0);
  const cplx v00 = su_scale * u.at(0, 0);
  const cplx v01 = su_scale * u.at(0, 1);

  UnitaryDecomposition d;
  d.b = 2.0 * std::atan2(std::abs(v01), std::abs(v00));
  if (std::abs(v01) <= kGimbalTol) {
    d.a = wrap_angle(-2.0 * std::arg(v00));
    d.c = 0.0;
  } else if (std::abs(v00) <= kGimbalTol) {
    d.a = wrap_angle(-2.0 * std::arg(v01) - kPi);
    d.c = 0.0;
  } else {
    const double sum = -2.0 * std::arg(v00);
    const double diff = -2.0 * std::arg(v01) - kPi;
    d.a = wrap_angle((sum + diff) / 2.0);
    d.c = wrap_angle((sum - diff) / 2.0);
  }

  // The phase is recovered from the rotation actually built, which absorbs
  // every wrap-induced sign ambiguity above.
  const CMatrix r = mat::zrot(d.a) * mat::xrot(d.b) * mat::zrot(d.c);
  d.global_phase = wrap_angle(std::arg((r.adjoint() * u).trace()));
  return d;
}

CMatrix reconstruct(const UnitaryDecomposition& d) {
  return (mat::zrot(d.a) * mat::xrot(d.b) * mat::zrot(d.c))
      .scaled(std::polar(1.0, d.global_phase));
}

std::array<double, 3> chain_angles(const CMatrix& u, double tol) {
  // HZ(a3) HZ(a2) HZ(a1) = H Zrot(a3) Xrot(a2) Zrot(a1), since HZH = X.
  const UnitaryDecomposition d = euler_decompose(mat::hadamard() * u, tol);
  return {d.c, d.b, d.a};
}

}  // namespace clusterflow
