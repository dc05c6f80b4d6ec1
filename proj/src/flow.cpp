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

#include "clusterflow/flow.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace clusterflow {

namespace {

std::string join_diagnostics(const std::vector<std::string>& diags) {
  std::string out;
  for (const std::string& d : diags) {
    if (!out.empty()) out += "; ";
    out += d;
  }
  return out;
}

/// Dependency targets allowed for each classical channel. `via_junction`
/// adds the chain predecessor of the node's junction partner.
std::set<std::size_t> allowed_deps(const ClusterGraph& graph, std::size_t id,
                                   bool first_pred, bool second_pred,
                                   bool via_junction) {
  std::set<std::size_t> allowed;
  if (first_pred) {
    if (auto p = graph.predecessor(id)) allowed.insert(*p);
  }
  if (second_pred) {
    if (auto p = graph.predecessor2(id)) allowed.insert(*p);
  }
  if (via_junction) {
    if (auto partner = graph.junction_partner(id)) {
      if (auto p = graph.predecessor(*partner)) allowed.insert(*p);
    }
  }
  return allowed;
}

void check_dep_list(const ClusterGraph& graph, std::size_t owner,
                    const char* channel, const std::vector<std::size_t>& deps,
                    const std::set<std::size_t>& allowed,
                    std::vector<std::string>& diags) {
  std::set<std::size_t> seen;
  for (std::size_t d : deps) {
    if (d >= graph.num_nodes()) {
      diags.push_back("node " + std::to_string(owner) + " " + channel +
                      " dependency " + std::to_string(d) + " is out of range");
      continue;
    }
    if (!seen.insert(d).second) {
      diags.push_back("node " + std::to_string(owner) + " lists " + channel +
                      " dependency " + std::to_string(d) + " twice");
    }
    if (allowed.count(d) == 0) {
      diags.push_back("node " + std::to_string(owner) + " " + channel +
                      " dependency " + std::to_string(d) +
                      " violates locality (allowed: chain neighbors and junction partner's predecessor)");
    }
  }
}

}  // namespace

void OutcomeLog::record(std::size_t qubit, int bit, double probability) {
  if (index_.count(qubit) != 0) {
    throw std::logic_error("outcome for qubit " + std::to_string(qubit) +
                           " recorded twice");
  }
  index_.emplace(qubit, entries_.size());
  entries_.push_back(Entry{qubit, bit, probability});
}

bool OutcomeLog::has(std::size_t qubit) const { return index_.count(qubit) != 0; }

int OutcomeLog::bit(std::size_t qubit) const {
  auto it = index_.find(qubit);
  if (it == index_.end()) {
    throw std::logic_error("no recorded outcome for qubit " + std::to_string(qubit));
  }
  return entries_[it->second].bit;
}

int OutcomeLog::parity(const std::vector<std::size_t>& deps) const {
  int p = 0;
  for (std::size_t d : deps) p ^= bit(d);
  return p;
}

double OutcomeLog::branch_probability() const {
  double p = 1.0;
  for (const Entry& e : entries_) p *= e.probability;
  return p;
}

double effective_angle(const MeasureStep& step, const OutcomeLog& log) {
  return log.parity(step.sign_deps) ? -step.angle : step.angle;
}

MeasureResult execute_step(StateVector& state, const MeasureStep& step,
                           OutcomeLog& log, const MeasurePolicy& policy,
                           std::mt19937_64& rng) {
  state.apply(Gate::zrot(effective_angle(step, log)), step.qubit);
  state.apply(Gate::h(), step.qubit);
  if (log.parity(step.flip_deps)) {
    state.apply(Gate::x(), step.qubit);
  }
  const MeasureResult r = state.measure(step.qubit, policy, rng);
  log.record(step.qubit, r.bit, r.probability);
  return r;
}

void apply_output_corrections(StateVector& state,
                              const std::vector<OutputCorrection>& corrections,
                              const OutcomeLog& log) {
  for (const OutputCorrection& c : corrections) {
    if (log.parity(c.z_deps)) state.apply(Gate::z(), c.qubit);
    if (log.parity(c.x_deps)) state.apply(Gate::x(), c.qubit);
  }
}

std::vector<std::string> check_pattern(const MeasurementPattern& pattern,
                                       const ClusterGraph& graph) {
  std::vector<std::string> diags;
  const std::size_t n = graph.num_nodes();

  std::vector<int> step_index(n, -1);
  for (std::size_t k = 0; k < pattern.steps.size(); ++k) {
    const MeasureStep& s = pattern.steps[k];
    if (s.qubit >= n) {
      diags.push_back("step " + std::to_string(k) + " targets node " +
                      std::to_string(s.qubit) + " outside the graph");
      continue;
    }
    if (step_index[s.qubit] >= 0) {
      diags.push_back("node " + std::to_string(s.qubit) + " is measured twice");
      continue;
    }
    step_index[s.qubit] = static_cast<int>(k);
    if (graph.node(s.qubit).role == NodeRole::Output) {
      diags.push_back("output node " + std::to_string(s.qubit) +
                      " appears in the measurement schedule");
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (graph.node(id).role != NodeRole::Output && step_index[id] < 0) {
      diags.push_back("non-output node " + std::to_string(id) + " is never measured");
    }
  }

  std::vector<int> corrected(n, 0);
  for (const OutputCorrection& c : pattern.corrections) {
    if (c.qubit >= n) {
      diags.push_back("correction targets node " + std::to_string(c.qubit) +
                      " outside the graph");
      continue;
    }
    if (graph.node(c.qubit).role != NodeRole::Output) {
      diags.push_back("correction targets non-output node " + std::to_string(c.qubit));
    }
    if (++corrected[c.qubit] > 1) {
      diags.push_back("node " + std::to_string(c.qubit) + " is corrected twice");
    }
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (graph.node(id).role == NodeRole::Output && corrected[id] == 0) {
      diags.push_back("output node " + std::to_string(id) + " has no correction");
    }
  }

  // Schedule order: every dependency of step k must be measured before k.
  for (std::size_t k = 0; k < pattern.steps.size(); ++k) {
    const MeasureStep& s = pattern.steps[k];
    if (s.qubit >= n) continue;
    for (const auto* deps : {&s.sign_deps, &s.flip_deps}) {
      for (std::size_t d : *deps) {
        if (d >= n) continue;  // flagged by the locality check below
        if (step_index[d] < 0 || step_index[d] >= static_cast<int>(k)) {
          diags.push_back("step " + std::to_string(k) + " (node " +
                          std::to_string(s.qubit) + ") depends on node " +
                          std::to_string(d) + " which is not measured earlier");
        }
      }
    }
  }
  for (const OutputCorrection& c : pattern.corrections) {
    for (const auto* deps : {&c.x_deps, &c.z_deps}) {
      for (std::size_t d : *deps) {
        if (d >= n) continue;
        if (step_index[d] < 0) {
          diags.push_back("correction on node " + std::to_string(c.qubit) +
                          " depends on unmeasured node " + std::to_string(d));
        }
      }
    }
  }

  // Locality. Sign flows from the chain predecessor; pre-meter flips from
  // the second predecessor or across the junction edge; output X from the
  // predecessor, output Z from the second predecessor or across the output's
  // own junction edge.
  for (const MeasureStep& s : pattern.steps) {
    if (s.qubit >= n) continue;
    check_dep_list(graph, s.qubit, "sign", s.sign_deps,
                   allowed_deps(graph, s.qubit, true, false, false), diags);
    check_dep_list(graph, s.qubit, "flip", s.flip_deps,
                   allowed_deps(graph, s.qubit, false, true, true), diags);
  }
  for (const OutputCorrection& c : pattern.corrections) {
    if (c.qubit >= n) continue;
    check_dep_list(graph, c.qubit, "X", c.x_deps,
                   allowed_deps(graph, c.qubit, true, false, false), diags);
    check_dep_list(graph, c.qubit, "Z", c.z_deps,
                   allowed_deps(graph, c.qubit, false, true, true), diags);
  }
  return diags;
}

RunResult execute(const ClusterGraph& graph, const MeasurementPattern& pattern,
                  const std::map<std::string, std::array<cplx, 2>>& wire_inputs,
                  const RunPolicy& policy, std::uint64_t seed) {
  if (auto diags = graph.validate(); !diags.empty()) {
    throw std::invalid_argument("malformed graph: " + join_diagnostics(diags));
  }
  if (auto diags = check_pattern(pattern, graph); !diags.empty()) {
    throw std::invalid_argument("malformed pattern: " + join_diagnostics(diags));
  }
  for (const auto& [wire, amps] : wire_inputs) {
    (void)amps;
    if (!graph.has_wire(wire)) {
      throw std::invalid_argument("input given for unknown wire " + wire);
    }
  }
  std::map<std::size_t, std::array<cplx, 2>> qubit_inputs;
  for (const std::string& wire : graph.wire_order()) {
    auto it = wire_inputs.find(wire);
    if (it == wire_inputs.end()) {
      throw std::invalid_argument("no input state for wire " + wire);
    }
    qubit_inputs.emplace(graph.wire_nodes(wire).front(), it->second);
  }

  const ForceBits* forced = std::get_if<ForceBits>(&policy);
  if (forced && forced->bits.size() != pattern.steps.size()) {
    throw std::invalid_argument("forced bit list has " +
                                std::to_string(forced->bits.size()) +
                                " entries for " +
                                std::to_string(pattern.steps.size()) + " steps");
  }

  StateVector state = StateVector::init_register(graph.num_nodes(), qubit_inputs);
  graph.entangle(state);

  std::mt19937_64 rng(seed);
  OutcomeLog log;
  for (std::size_t k = 0; k < pattern.steps.size(); ++k) {
    const MeasurePolicy step_policy =
        forced ? MeasurePolicy{Forced{forced->bits[k]}} : MeasurePolicy{Sampled{}};
    try {
      execute_step(state, pattern.steps[k], log, step_policy, rng);
    } catch (const std::exception& e) {
      throw std::runtime_error("step " + std::to_string(k) + " (node " +
                               std::to_string(pattern.steps[k].qubit) +
                               ") failed: " + e.what());
    }
  }
  apply_output_corrections(state, pattern.corrections, log);

  const double p = log.branch_probability();
  return RunResult{std::move(log), std::move(state), p, seed};
}

}  // namespace clusterflow
