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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterflow/circuit_io.hpp"
#include "clusterflow/compiler.hpp"
#include "clusterflow/dot_export.hpp"
#include "clusterflow/flow.hpp"
#include "clusterflow/report.hpp"
#include "clusterflow/verify.hpp"

namespace {

using namespace clusterflow;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerifyFailure = 2;
constexpr double kTolerance = 1e-9;
constexpr double kPi = 3.14159265358979323846;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<std::size_t> schedule_qubits(const MeasurementPattern& pattern) {
  std::vector<std::size_t> qs;
  for (const MeasureStep& s : pattern.steps) qs.push_back(s.qubit);
  return qs;
}

std::vector<std::size_t> output_qubits(const ClusterGraph& graph) {
  std::vector<std::size_t> qs;
  for (const std::string& w : graph.wire_order()) {
    qs.push_back(graph.wire_nodes(w).back());
  }
  return qs;
}

int cmd_run(const std::string& circuit_path, std::uint64_t seed,
            const std::vector<std::string>& branch_args,
            const std::string& report_path) {
  std::string mode = "all";
  std::size_t sample_count = 0;
  if (!branch_args.empty()) {
    mode = branch_args[0];
    if (mode == "all") {
      if (branch_args.size() != 1) {
        throw std::runtime_error("--branches all takes no count");
      }
    } else if (mode == "sample") {
      if (branch_args.size() != 2) {
        throw std::runtime_error("--branches sample needs a count");
      }
      const long long parsed = std::stoll(branch_args[1]);
      if (parsed <= 0) throw std::runtime_error("--branches sample count must be positive");
      sample_count = static_cast<std::size_t>(parsed);
    } else {
      throw std::runtime_error("--branches expects \"all\" or \"sample K\"");
    }
  }

  const ParsedCircuit parsed = load_circuit_file(circuit_path);
  print_warnings(parsed.warnings);
  const CompiledPattern cp = compile(parsed.circuit);
  const auto inputs = circuit_inputs(parsed.circuit);

  ReportInputs report;
  report.seed = seed;
  report.circuit_digest = circuit_digest(parsed.circuit);
  report.tolerance = kTolerance;
  report.measured_qubits = schedule_qubits(cp.pattern);
  report.output_qubits = output_qubits(cp.graph);

  if (mode == "all") {
    report.mode = "exhaustive";
    const BranchReport branches =
        enumerate_branches(cp.graph, cp.pattern, inputs, cp.oracle);
    report.records = branches.branches;
  } else {
    report.mode = "sample";
    const std::vector<cplx> expected = oracle_output(cp.oracle);
    std::mt19937_64 master(seed);
    for (std::size_t i = 0; i < sample_count; ++i) {
      const RunResult run = execute(cp.graph, cp.pattern, inputs, SampleAll{}, master());
      const std::vector<cplx> out = logical_output(run.state, cp.graph);
      BranchRecord rec;
      for (const OutcomeLog::Entry& e : run.outcomes.entries()) rec.bits.push_back(e.bit);
      rec.probability = run.branch_probability;
      cplx overlap{0.0, 0.0};
      for (std::size_t t = 0; t < out.size(); ++t) {
        overlap += std::conj(expected[t]) * out[t];
      }
      rec.overlap = overlap;
      rec.fidelity = std::norm(overlap);
      report.records.push_back(std::move(rec));
    }
  }

  const json doc = build_report(report);
  write_output(report_text(doc), report_path);
  return report_passes(doc) ? kExitPass : kExitVerifyFailure;
}

LogicalCircuit chain_circuit(const std::vector<double>& angles,
                             const std::array<cplx, 2>& input) {
  LogicalCircuit c;
  c.wires.push_back(WireDecl{"w0", input});
  for (double a : angles) c.ops.push_back(RotOp{"w0", a});
  return c;
}

LogicalCircuit hbranch_circuit(double a1, double a2, double b1, double b2,
                               const std::array<cplx, 2>& in_a,
                               const std::array<cplx, 2>& in_b) {
  LogicalCircuit c;
  c.wires.push_back(WireDecl{"w0", in_a});
  c.wires.push_back(WireDecl{"w1", in_b});
  c.ops.push_back(RotOp{"w0", a1});
  c.ops.push_back(RotOp{"w1", a2});
  c.ops.push_back(JunctionOp{"w0", "w1", std::pair<double, double>{b1, b2}});
  return c;
}

std::array<cplx, 2> random_state(std::mt19937_64& rng) {
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double theta = std::acos(1.0 - 2.0 * unit());
  const double phi = 2.0 * kPi * unit();
  return {cplx{std::cos(theta / 2.0), 0.0},
          std::polar(std::sin(theta / 2.0), phi)};
}

double random_angle(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * kPi;
}

int cmd_verify(const std::string& suite, std::size_t trials) {
  json doc;
  doc["suite"] = suite;
  bool pass = false;

  if (suite == "identities") {
    if (trials == 0) trials = 100;
    std::mt19937_64 rng(20260819);
    double max_residual = 0.0;
    std::vector<double> angles = {0.0, 0.7};
    for (std::size_t i = 0; i < trials; ++i) angles.push_back(random_angle(rng));
    for (double a : angles) {
      max_residual = std::max(max_residual, deformation_residuals(a).max());
    }
    const bool anti = anticommutation_sign_check();
    pass = max_residual <= 1e-12 && anti;
    doc["trials"] = angles.size();
    doc["max_residual"] = max_residual;
    doc["anticommutation"] = anti;
  } else if (suite == "uniformity") {
    if (trials == 0) trials = 50;
    std::mt19937_64 rng(20260819);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
      LogicalCircuit c;
      switch (i % 3) {
        case 0:
          c = chain_circuit({random_angle(rng), random_angle(rng), random_angle(rng)},
                            random_state(rng));
          break;
        case 1:
          c = hbranch_circuit(random_angle(rng), random_angle(rng), random_angle(rng),
                              random_angle(rng), random_state(rng), random_state(rng));
          break;
        default: {
          c = hbranch_circuit(random_angle(rng), random_angle(rng), random_angle(rng),
                              random_angle(rng), random_state(rng), random_state(rng));
          c.ops.push_back(RotOp{"w1", random_angle(rng)});
          break;
        }
      }
      const CompiledPattern cp = compile(c);
      max_dev = std::max(max_dev, max_uniformity_deviation(cp.graph, cp.pattern,
                                                           circuit_inputs(c)));
    }
    pass = max_dev <= kTolerance;
    doc["trials"] = trials;
    doc["max_deviation"] = max_dev;
  } else {  // ablation
    const std::array<cplx, 2> psi_a{cplx{0.6, 0.0}, cplx{0.0, 0.8}};
    const std::array<cplx, 2> psi_b{cplx{0.8, 0.0}, cplx{0.0, 0.6}};
    std::vector<LogicalCircuit> instances;
    instances.push_back(chain_circuit({0.7, 1.1, 2.3}, psi_a));
    instances.push_back(hbranch_circuit(0.7, 1.1, 2.3, 0.4, psi_a, psi_b));

    std::size_t removals = 0;
    std::size_t detected = 0;
    double worst = 0.0;
    json details = json::array();
    for (const LogicalCircuit& c : instances) {
      const CompiledPattern cp = compile(c);
      for (const AblationRecord& rec :
           ablation_scan(cp.graph, cp.pattern, circuit_inputs(c), cp.oracle)) {
        ++removals;
        if (rec.min_pair_fidelity < 0.99) ++detected;
        worst = std::max(worst, rec.min_pair_fidelity);
        details.push_back({{"removed", rec.removed},
                           {"min_pair_fidelity", rec.min_pair_fidelity}});
      }
    }
    pass = removals > 0 && detected == removals;
    doc["removals"] = removals;
    doc["detected"] = detected;
    doc["worst_min_pair_fidelity"] = worst;
    doc["details"] = details;
  }

  doc["verdict"] = pass ? "pass" : "fail";
  std::cout << doc.dump(2) << "\n";
  return pass ? kExitPass : kExitVerifyFailure;
}

int cmd_export_dot(const std::string& circuit_path, const std::string& out_path) {
  const ParsedCircuit parsed = load_circuit_file(circuit_path);
  print_warnings(parsed.warnings);
  const CompiledPattern cp = compile(parsed.circuit);
  write_output(export_dot(cp.graph, cp.pattern), out_path);
  return kExitPass;
}

CMatrix parse_inline_matrix(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::runtime_error("--inline: bad number \"" + item + "\"");
    values.push_back(v);
  }
  if (values.size() != 8) {
    throw std::runtime_error("--inline expects 8 comma-separated numbers "
                             "(row-major re,im pairs), got " +
                             std::to_string(values.size()));
  }
  CMatrix m(2);
  for (std::size_t i = 0; i < 4; ++i) {
    m.at(i / 2, i % 2) = cplx{values[2 * i], values[2 * i + 1]};
  }
  return m;
}

CMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!doc.is_array() || doc.size() != 2) {
    throw std::runtime_error(path + ": expected 2 rows of 2 [re, im] pairs");
  }
  CMatrix m(2);
  for (std::size_t r = 0; r < 2; ++r) {
    if (!doc[r].is_array() || doc[r].size() != 2) {
      throw std::runtime_error(path + ": expected 2 rows of 2 [re, im] pairs");
    }
    for (std::size_t c = 0; c < 2; ++c) {
      const json& cell = doc[r][c];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw std::runtime_error(path + ": entry [" + std::to_string(r) + "][" +
                                 std::to_string(c) + "] is not a [re, im] pair");
      }
      m.at(r, c) = cplx{cell[0].get<double>(), cell[1].get<double>()};
    }
  }
  return m;
}

int cmd_decompose(const CMatrix& u) {
  const double dev = u.unitarity_deviation();
  if (dev > 1e-8) {
    std::cerr << "error: matrix is not unitary (deviation " << dev << ")\n";
    return kExitInputError;
  }
  const UnitaryDecomposition d = euler_decompose(u);
  const std::array<double, 3> alphas = chain_angles(u);

  const double euler_err = reconstruct(d).max_abs_diff(u);
  const CMatrix hz3 = mat::hadamard() * mat::zrot(alphas[2]) * mat::hadamard() *
                      mat::zrot(alphas[1]) * mat::hadamard() * mat::zrot(alphas[0]);
  // The chain realizes U only up to a global phase; report the phase-free gap.
  const double chain_err =
      std::abs(1.0 - std::abs((hz3.adjoint() * u).trace()) / 2.0);

  json doc = {{"euler",
               {{"global_phase", d.global_phase}, {"a", d.a}, {"b", d.b}, {"c", d.c}}},
              {"chain_angles", alphas},
              {"euler_reconstruction_error", euler_err},
              {"chain_reconstruction_error", chain_err}};
  std::cout << doc.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-state pattern compiler, simulator, and verifier"};
  app.require_subcommand(1);

  std::string circuit_path;
  std::string report_path;
  std::string out_path;
  std::string suite;
  std::string inline_matrix;
  std::string matrix_path;
  std::vector<std::string> branch_args{"all"};
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  CLI::App* run = app.add_subcommand(
      "run", "Compile a circuit, execute its pattern, and verify against the oracle");
  run->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
  run->add_option("--seed", seed, "RNG seed (default from MBQC_SEED, else 0)")
      ->envname("MBQC_SEED");
  run->add_option("--branches", branch_args,
                  "\"all\" for exhaustive enumeration or \"sample K\" for K seeded runs")
      ->expected(1, 2);
  run->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite, "identities, ablation, or uniformity")
      ->required()
      ->check(CLI::IsMember({"identities", "ablation", "uniformity"}));
  verify->add_option("--trials", trials, "Trial count (suite-specific default)");

  CLI::App* export_dot_cmd =
      app.add_subcommand("export-dot", "Emit the cluster and signal-flow graph as DOT");
  export_dot_cmd->add_option("--circuit", circuit_path, "Circuit JSON file")->required();
  export_dot_cmd->add_option("--out", out_path, "Output DOT file")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose", "Euler and chain angles of a 2x2 unitary");
  CLI::Option* opt_matrix =
      decompose->add_option("--matrix", matrix_path, "JSON file: 2x2 of [re, im]");
  CLI::Option* opt_inline = decompose->add_option(
      "--inline", inline_matrix, "8 comma-separated numbers: row-major re,im pairs");
  opt_matrix->excludes(opt_inline);
  opt_inline->excludes(opt_matrix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (run->parsed()) {
      return cmd_run(circuit_path, seed, branch_args, report_path);
    }
    if (verify->parsed()) {
      return cmd_verify(suite, trials);
    }
    if (export_dot_cmd->parsed()) {
      return cmd_export_dot(circuit_path, out_path);
    }
    if (decompose->parsed()) {
      if (opt_matrix->count() == 0 && opt_inline->count() == 0) {
        std::cerr << "error: decompose needs --matrix or --inline\n";
        return kExitInputError;
      }
      const CMatrix u = opt_inline->count() ? parse_inline_matrix(inline_matrix)
                                            : parse_matrix_file(matrix_path);
      return cmd_decompose(u);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
