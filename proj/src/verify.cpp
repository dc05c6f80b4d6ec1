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

#include "clusterflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterflow {

namespace {

CMatrix hz(double alpha) { return mat::hadamard() * mat::zrot(alpha); }

/// Embeds a single-slot 2x2 into the n-slot space (slot = index bit).
CMatrix embed_single(const CMatrix& m, std::size_t slot, std::size_t num_slots) {
  const std::size_t dim = std::size_t{1} << num_slots;
  const std::size_t bit = std::size_t{1} << slot;
  CMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t b = (col & bit) ? 1 : 0;
    for (std::size_t rb = 0; rb < 2; ++rb) {
      const cplx v = m.at(rb, b);
      if (v == cplx{0.0, 0.0}) continue;
      const std::size_t row = (col & ~bit) | (rb ? bit : 0);
      out.at(row, col) += v;
    }
  }
  return out;
}

CMatrix embed_cz(std::size_t slot_a, std::size_t slot_b, std::size_t num_slots) {
  const std::size_t dim = std::size_t{1} << num_slots;
  const std::size_t mask =
      (std::size_t{1} << slot_a) | (std::size_t{1} << slot_b);
  CMatrix out = CMatrix::identity(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) out.at(i, i) = -1.0;
  }
  return out;
}

void apply_single_inplace(std::vector<cplx>& v, const CMatrix& m, std::size_t slot) {
  const std::size_t bit = std::size_t{1} << slot;
  const cplx m00 = m.at(0, 0), m01 = m.at(0, 1);
  const cplx m10 = m.at(1, 0), m11 = m.at(1, 1);
  for (std::size_t base = 0; base < v.size(); ++base) {
    if (base & bit) continue;
    const cplx a0 = v[base];
    const cplx a1 = v[base | bit];
    v[base] = m00 * a0 + m01 * a1;
    v[base | bit] = m10 * a0 + m11 * a1;
  }
}

void apply_cz_inplace(std::vector<cplx>& v, std::size_t slot_a, std::size_t slot_b) {
  const std::size_t mask =
      (std::size_t{1} << slot_a) | (std::size_t{1} << slot_b);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((i & mask) == mask) v[i] = -v[i];
  }
}

void check_spec(const OracleSpec& spec) {
  const std::size_t n = spec.wire_order.size();
  if (n == 0) throw std::invalid_argument("oracle spec has no wires");
  if (spec.inputs.size() != n) {
    throw std::invalid_argument("oracle spec input count does not match wire count");
  }
  for (const OracleOp& op : spec.ops) {
    if (const OracleRot* rot = std::get_if<OracleRot>(&op)) {
      if (rot->slot >= n) throw std::invalid_argument("oracle op slot out of range");
    } else {
      const OracleJunction& j = std::get<OracleJunction>(op);
      if (j.slot_a >= n || j.slot_b >= n || j.slot_a == j.slot_b) {
        throw std::invalid_argument("oracle junction slots invalid");
      }
    }
  }
}

std::vector<cplx> product_state(const std::vector<std::array<cplx, 2>>& inputs) {
  std::vector<cplx> v(std::size_t{1} << inputs.size(), cplx{0.0, 0.0});
  v[0] = 1.0;
  std::size_t filled = 1;
  for (const auto& amp : inputs) {
    for (std::size_t i = 0; i < filled; ++i) {
      const cplx base = v[i];
      v[i] = base * amp[0];
      v[i + filled] = base * amp[1];
    }
    filled <<= 1;
  }
  return v;
}

}  // namespace

CMatrix oracle_unitary(const OracleSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.wire_order.size();
  if (n > kMaxOracleWires) {
    throw std::invalid_argument("oracle matrix for " + std::to_string(n) +
                                " wires exceeds the " +
                                std::to_string(kMaxOracleWires) + "-wire limit");
  }
  CMatrix u = CMatrix::identity(std::size_t{1} << n);
  for (const OracleOp& op : spec.ops) {
    if (const OracleRot* rot = std::get_if<OracleRot>(&op)) {
      u = embed_single(hz(rot->alpha), rot->slot, n) * u;
    } else {
      const OracleJunction& j = std::get<OracleJunction>(op);
      u = embed_cz(j.slot_a, j.slot_b, n) * u;
      if (j.angles) {
        u = embed_single(hz(j.angles->first), j.slot_a, n) * u;
        u = embed_single(hz(j.angles->second), j.slot_b, n) * u;
      }
    }
  }
  return u;
}

std::vector<cplx> oracle_output(const OracleSpec& spec) {
  check_spec(spec);
  std::vector<cplx> v = product_state(spec.inputs);
  for (const OracleOp& op : spec.ops) {
    if (const OracleRot* rot = std::get_if<OracleRot>(&op)) {
      apply_single_inplace(v, hz(rot->alpha), rot->slot);
    } else {
      const OracleJunction& j = std::get<OracleJunction>(op);
      apply_cz_inplace(v, j.slot_a, j.slot_b);
      if (j.angles) {
        apply_single_inplace(v, hz(j.angles->first), j.slot_a);
        apply_single_inplace(v, hz(j.angles->second), j.slot_b);
      }
    }
  }
  return v;
}

std::vector<cplx> logical_output(const StateVector& state, const ClusterGraph& graph) {
  if (state.num_qubits() != graph.num_nodes()) {
    throw std::invalid_argument("register size does not match graph node count");
  }
  std::size_t meter_base = 0;
  for (std::size_t q = 0; q < graph.num_nodes(); ++q) {
    const bool is_output = graph.node(q).role == NodeRole::Output;
    if (is_output == state.measured(q)) {
      throw std::invalid_argument(
          "output extraction needs exactly the non-output qubits measured");
    }
    if (state.measured(q) && state.collapsed_bit(q)) {
      meter_base |= std::size_t{1} << q;
    }
  }
  std::vector<std::size_t> out_qubits;
  for (const std::string& w : graph.wire_order()) {
    out_qubits.push_back(graph.wire_nodes(w).back());
  }
  std::vector<cplx> v(std::size_t{1} << out_qubits.size());
  for (std::size_t widx = 0; widx < v.size(); ++widx) {
    std::size_t idx = meter_base;
    for (std::size_t s = 0; s < out_qubits.size(); ++s) {
      if ((widx >> s) & 1) idx |= std::size_t{1} << out_qubits[s];
    }
    v[widx] = state.amplitudes()[idx];
  }
  return v;
}

BranchReport enumerate_branches(const ClusterGraph& graph,
                                const MeasurementPattern& pattern,
                                const std::map<std::string, std::array<cplx, 2>>& inputs,
                                const OracleSpec& spec,
                                const std::vector<cplx>* expected_logical) {
  check_spec(spec);
  if (spec.wire_order != graph.wire_order()) {
    throw std::invalid_argument("oracle spec wires do not match the graph");
  }
  const std::size_t k = pattern.steps.size();
  if (k > kMaxEnumeratedSteps) {
    throw std::invalid_argument("enumeration of " + std::to_string(k) +
                                " measurements exceeds the " +
                                std::to_string(kMaxEnumeratedSteps) + "-step bound");
  }
  const std::vector<cplx> expected =
      expected_logical ? *expected_logical : oracle_output(spec);
  if (expected.size() != (std::size_t{1} << spec.wire_order.size())) {
    throw std::invalid_argument("expected logical output has the wrong dimension");
  }

  BranchReport report;
  report.num_steps = k;
  report.min_fidelity = 1.0;
  report.max_fidelity = 0.0;
  for (std::size_t branch = 0; branch < (std::size_t{1} << k); ++branch) {
    ForceBits policy;
    policy.bits.resize(k);
    for (std::size_t j = 0; j < k; ++j) policy.bits[j] = (branch >> j) & 1;

    const RunResult run = execute(graph, pattern, inputs, policy, 0);
    const std::vector<cplx> out = logical_output(run.state, graph);

    cplx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < out.size(); ++i) {
      overlap += std::conj(expected[i]) * out[i];
    }
    BranchRecord rec;
    rec.bits = policy.bits;
    rec.probability = run.branch_probability;
    rec.overlap = overlap;
    rec.fidelity = std::norm(overlap);
    report.min_fidelity = std::min(report.min_fidelity, rec.fidelity);
    report.max_fidelity = std::max(report.max_fidelity, rec.fidelity);
    report.probability_sum += rec.probability;
    report.branches.push_back(std::move(rec));
  }
  return report;
}

std::vector<AblationRecord> ablation_scan(
    const ClusterGraph& graph, const MeasurementPattern& pattern,
    const std::map<std::string, std::array<cplx, 2>>& inputs, const OracleSpec& spec) {
  check_spec(spec);
  const std::size_t k = pattern.steps.size();
  if (k > kMaxEnumeratedSteps) {
    throw std::invalid_argument("ablation enumeration exceeds the step bound");
  }

  struct Removal {
    std::string label;
    MeasurementPattern pattern;
  };
  std::vector<Removal> removals;
  auto queue_removals = [&](const std::vector<std::size_t>& deps,
                            const std::string& owner, const char* channel,
                            auto mutate) {
    for (std::size_t i = 0; i < deps.size(); ++i) {
      MeasurementPattern p = pattern;
      mutate(p, i);
      removals.push_back(Removal{
          owner + " " + channel + " dep q" + std::to_string(deps[i]), std::move(p)});
    }
  };
  for (std::size_t s = 0; s < pattern.steps.size(); ++s) {
    const MeasureStep& step = pattern.steps[s];
    const std::string owner = "step q" + std::to_string(step.qubit);
    queue_removals(step.sign_deps, owner, "sign", [s](MeasurementPattern& p, std::size_t i) {
      p.steps[s].sign_deps.erase(p.steps[s].sign_deps.begin() + i);
    });
    queue_removals(step.flip_deps, owner, "flip", [s](MeasurementPattern& p, std::size_t i) {
      p.steps[s].flip_deps.erase(p.steps[s].flip_deps.begin() + i);
    });
  }
  for (std::size_t c = 0; c < pattern.corrections.size(); ++c) {
    const OutputCorrection& corr = pattern.corrections[c];
    const std::string owner = "output q" + std::to_string(corr.qubit);
    queue_removals(corr.x_deps, owner, "X", [c](MeasurementPattern& p, std::size_t i) {
      p.corrections[c].x_deps.erase(p.corrections[c].x_deps.begin() + i);
    });
    queue_removals(corr.z_deps, owner, "Z", [c](MeasurementPattern& p, std::size_t i) {
      p.corrections[c].z_deps.erase(p.corrections[c].z_deps.begin() + i);
    });
  }

  std::vector<AblationRecord> records;
  for (const Removal& removal : removals) {
    std::vector<std::vector<cplx>> outputs;
    for (std::size_t branch = 0; branch < (std::size_t{1} << k); ++branch) {
      ForceBits policy;
      policy.bits.resize(k);
      for (std::size_t j = 0; j < k; ++j) policy.bits[j] = (branch >> j) & 1;
      const RunResult run = execute(graph, removal.pattern, inputs, policy, 0);
      outputs.push_back(logical_output(run.state, graph));
    }
    AblationRecord rec;
    rec.removed = removal.label;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      for (std::size_t j = i + 1; j < outputs.size(); ++j) {
        cplx ov{0.0, 0.0};
        for (std::size_t t = 0; t < outputs[i].size(); ++t) {
          ov += std::conj(outputs[i][t]) * outputs[j][t];
        }
        rec.min_pair_fidelity = std::min(rec.min_pair_fidelity, std::norm(ov));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double max_uniformity_deviation(const ClusterGraph& graph,
                                const MeasurementPattern& pattern,
                                const std::map<std::string, std::array<cplx, 2>>& inputs) {
  if (auto diags = graph.validate(); !diags.empty()) {
    throw std::invalid_argument("malformed graph");
  }
  if (auto diags = check_pattern(pattern, graph); !diags.empty()) {
    throw std::invalid_argument("malformed pattern");
  }
  if (pattern.steps.size() > kMaxEnumeratedSteps) {
    throw std::invalid_argument("uniformity walk exceeds the step bound");
  }
  std::map<std::size_t, std::array<cplx, 2>> qubit_inputs;
  for (const std::string& wire : graph.wire_order()) {
    auto it = inputs.find(wire);
    if (it == inputs.end()) throw std::invalid_argument("no input for wire " + wire);
    qubit_inputs.emplace(graph.wire_nodes(wire).front(), it->second);
  }
  StateVector root = StateVector::init_register(graph.num_nodes(), qubit_inputs);
  graph.entangle(root);

  double max_dev = 0.0;
  std::mt19937_64 rng(0);  // unused by forced measurements
  auto walk = [&](auto&& self, const StateVector& state, const OutcomeLog& log,
                  std::size_t k) -> void {
    if (k == pattern.steps.size()) return;
    for (int bit : {0, 1}) {
      StateVector next = state;
      OutcomeLog next_log = log;
      const MeasureResult r =
          execute_step(next, pattern.steps[k], next_log, Forced{bit}, rng);
      max_dev = std::max(max_dev, std::abs(r.probability - 0.5));
      self(self, next, next_log, k + 1);
    }
  };
  walk(walk, root, OutcomeLog{}, 0);
  return max_dev;
}

double IdentityResiduals::max() const {
  return std::max({z_to_premeter_x, x_to_sign_flip, measured_z_removal});
}

IdentityResiduals deformation_residuals(double alpha) {
  const CMatrix i2 = mat::identity2();
  const CMatrix hza = kron(hz(alpha), i2);
  const CMatrix czm = mat::cz();

  IdentityResiduals r;
  r.z_to_premeter_x = (hza * czm * kron(mat::pauli_z(), i2))
                          .max_abs_diff(kron(mat::pauli_x(), i2) * hza * czm);

  const CMatrix deformed = kron(hz(-alpha), i2) * czm;
  r.x_to_sign_flip = (hza * czm * kron(mat::pauli_x(), i2))
                         .max_abs_diff(kron(mat::pauli_z(), mat::pauli_z()) * deformed);

  // Projecting the measured qubit onto outcome s turns its Z into the scalar
  // (-1)^s, so the byproduct reduces to a Z on the partner plus a branch
  // sign. Checked for both outcomes.
  double worst = 0.0;
  for (int s = 0; s < 2; ++s) {
    CMatrix proj(2);
    proj.at(static_cast<std::size_t>(s), static_cast<std::size_t>(s)) = 1.0;
    const CMatrix projected = kron(proj, i2);
    const CMatrix lhs = projected * kron(mat::pauli_z(), mat::pauli_z()) * deformed;
    const CMatrix rhs = (kron(i2, mat::pauli_z()) * projected * deformed)
                            .scaled(s ? cplx{-1.0, 0.0} : cplx{1.0, 0.0});
    worst = std::max(worst, lhs.max_abs_diff(rhs));
  }
  r.measured_z_removal = worst;
  return r;
}

bool anticommutation_sign_check() {
  const CMatrix anti =
      mat::pauli_z() * mat::pauli_x() + mat::pauli_x() * mat::pauli_z();
  if (anti.max_abs() > 1e-15) return false;

  std::map<std::size_t, std::array<cplx, 2>> in;
  in.emplace(0, std::array<cplx, 2>{cplx{0.6, 0.0}, cplx{0.0, 0.8}});
  StateVector a = StateVector::init_register(2, in);
  StateVector negated = a;
  // ZXZX = -I: the same state up to a global phase of -1.
  negated.apply(Gate::z(), 0);
  negated.apply(Gate::x(), 0);
  negated.apply(Gate::z(), 0);
  negated.apply(Gate::x(), 0);
  const PhaseComparison cmp = equal_up_to_global_phase(a, negated, 1e-12);
  return cmp.equal && std::abs(cmp.fidelity - 1.0) <= 1e-12;
}

}  // namespace clusterflow
