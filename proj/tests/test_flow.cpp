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
#include <random>

#include <doctest.h>

#include "clusterflow/flow.hpp"

using namespace clusterflow;

namespace {

const std::array<cplx, 2> kPsi{cplx{0.6, 0.0}, cplx{0.0, 0.8}};

// Measured chain q0 q1 with output q2: the standard two-segment wire.
ClusterGraph chain3_graph() {
  ClusterGraph g;
  g.add_wire("w", 4);
  return g;
}

MeasurementPattern chain3_pattern(double a0, double a1, double a2) {
  MeasurementPattern p;
  p.steps = {
      MeasureStep{0, a0, {}, {}},
      MeasureStep{1, a1, {0}, {}},
      MeasureStep{2, a2, {1}, {0}},
  };
  p.corrections = {OutputCorrection{3, {2}, {1}}};
  return p;
}

ClusterGraph hbranch_graph() {
  ClusterGraph g;
  g.add_wire("a", 3);
  g.add_wire("b", 3);
  g.add_junction(1, 4);
  return g;
}

MeasurementPattern hbranch_pattern(double a0, double b0, double a1, double b1) {
  MeasurementPattern p;
  p.steps = {
      MeasureStep{0, a0, {}, {}},
      MeasureStep{3, b0, {}, {}},
      MeasureStep{1, a1, {0}, {3}},
      MeasureStep{4, b1, {3}, {0}},
  };
  p.corrections = {OutputCorrection{2, {1}, {0}}, OutputCorrection{5, {4}, {3}}};
  return p;
}

}  // namespace

TEST_CASE("outcome log records in schedule order and exposes parities") {
  OutcomeLog log;
  CHECK_FALSE(log.has(2));
  log.record(2, 1, 0.5);
  log.record(0, 0, 0.5);
  log.record(7, 1, 0.25);

  CHECK(log.has(2));
  CHECK(log.bit(2) == 1);
  CHECK(log.bit(0) == 0);
  CHECK(log.parity({}) == 0);
  CHECK(log.parity({2}) == 1);
  CHECK(log.parity({2, 7}) == 0);
  CHECK(log.parity({0, 2, 7}) == 0);
  CHECK(log.entries().size() == 3);
  CHECK(log.entries()[0].qubit == 2);
  CHECK(log.branch_probability() == doctest::Approx(0.0625));

  CHECK_THROWS_AS(log.record(2, 0, 0.5), std::logic_error);
  CHECK_THROWS_AS(log.bit(5), std::logic_error);
  CHECK_THROWS_AS(log.parity({5}), std::logic_error);
}

TEST_CASE("sign parity negates the measurement angle") {
  OutcomeLog log;
  log.record(0, 1, 0.5);
  log.record(1, 1, 0.5);
  log.record(2, 0, 0.5);

  MeasureStep step{3, 0.7, {}, {}};
  CHECK(effective_angle(step, log) == 0.7);
  step.sign_deps = {0};
  CHECK(effective_angle(step, log) == -0.7);
  step.sign_deps = {0, 1};
  CHECK(effective_angle(step, log) == 0.7);
  step.sign_deps = {0, 2};
  CHECK(effective_angle(step, log) == -0.7);
}

// A pre-meter X only relabels the two outcomes: running a step whose flip
// parity is odd and forcing bit s must match running the same step with no
// flip and forcing 1-s, branch for branch.
TEST_CASE("the flip channel relabels measurement outcomes") {
  std::mt19937_64 seedgen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = static_cast<double>(seedgen() % 6283) / 1000.0;
    const double t = static_cast<double>(seedgen() % 1000) / 1000.0 * 1.57;
    const std::array<cplx, 2> psi{cplx{std::cos(t), 0.0},
                                  cplx{0.0, std::sin(t)}};

    for (int s : {0, 1}) {
      std::mt19937_64 rng(1);

      StateVector flipped = StateVector::init_register(2, {{0, psi}});
      flipped.apply(Gate::cz(), 0, 1);
      OutcomeLog log_f;
      log_f.record(9, 1, 0.5);  // odd flip parity source
      const MeasureStep step_f{0, alpha, {}, {9}};
      const MeasureResult rf = execute_step(flipped, step_f, log_f, Forced{s}, rng);

      StateVector plain = StateVector::init_register(2, {{0, psi}});
      plain.apply(Gate::cz(), 0, 1);
      OutcomeLog log_p;
      const MeasureStep step_p{0, alpha, {}, {}};
      const MeasureResult rp = execute_step(plain, step_p, log_p, Forced{1 - s}, rng);

      CHECK(std::abs(rf.probability - rp.probability) <= 1e-12);
      // Compare the surviving qubit-1 slices directly; the meter bits differ
      // by construction.
      CHECK(std::abs(flipped.amplitudes()[s] - plain.amplitudes()[1 - s]) <= 1e-12);
      CHECK(std::abs(flipped.amplitudes()[2 | s] - plain.amplitudes()[3 - s]) <= 1e-12);
    }
  }
}

// At angle zero the segment output X^s H |0> equals |+> for either outcome:
// the byproduct is invisible on this input.
TEST_CASE("a zero-angle segment on the zero state yields plus either way") {
  const double r = 1.0 / std::sqrt(2.0);
  for (int s : {0, 1}) {
    std::mt19937_64 rng(1);
    StateVector state = StateVector::init_register(
        2, {{0, {cplx{1.0, 0.0}, cplx{0.0, 0.0}}}});
    state.apply(Gate::cz(), 0, 1);
    OutcomeLog log;
    const MeasureStep step{0, 0.0, {}, {}};
    const MeasureResult res = execute_step(state, step, log, Forced{s}, rng);
    CHECK(res.probability == doctest::Approx(0.5));
    CHECK(log.bit(0) == s);
    CHECK(std::abs(state.amplitudes()[s] - cplx{r, 0.0}) <= 1e-12);
    CHECK(std::abs(state.amplitudes()[2 | s] - cplx{r, 0.0}) <= 1e-12);
  }
}

TEST_CASE("output corrections apply z before x per parity") {
  OutcomeLog log;
  log.record(0, 1, 0.5);
  log.record(1, 0, 0.5);

  StateVector state = StateVector::init_register(3, {{2, kPsi}});
  apply_output_corrections(state, {OutputCorrection{2, {0}, {1}}}, log);
  // x parity 1, z parity 0: plain X on qubit 2.
  StateVector expect = StateVector::init_register(3, {{2, kPsi}});
  expect.apply(Gate::x(), 2);
  CHECK(std::abs(inner_product(expect, state) - cplx{1.0, 0.0}) <= 1e-12);

  StateVector both = StateVector::init_register(3, {{2, kPsi}});
  apply_output_corrections(both, {OutputCorrection{2, {0}, {0}}}, log);
  StateVector expect_both = StateVector::init_register(3, {{2, kPsi}});
  expect_both.apply(Gate::z(), 2);
  expect_both.apply(Gate::x(), 2);
  CHECK(std::abs(inner_product(expect_both, both) - cplx{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("well-formed patterns pass the checker") {
  CHECK(check_pattern(chain3_pattern(0.7, 1.1, 2.3), chain3_graph()).empty());
  CHECK(check_pattern(hbranch_pattern(0.7, 1.1, 2.3, 0.4), hbranch_graph()).empty());
}

TEST_CASE("the checker reports coverage defects") {
  const ClusterGraph g = chain3_graph();

  MeasurementPattern missing = chain3_pattern(0.1, 0.2, 0.3);
  missing.steps.erase(missing.steps.begin() + 1);
  missing.steps[1].sign_deps = {};  // keep the remaining deps resolvable
  auto diags = check_pattern(missing, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("node 1 is never measured") != std::string::npos);

  MeasurementPattern meter_output = chain3_pattern(0.1, 0.2, 0.3);
  meter_output.steps.push_back(MeasureStep{3, 0.0, {}, {}});
  diags = check_pattern(meter_output, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("output node 3 appears") != std::string::npos);

  MeasurementPattern twice = chain3_pattern(0.1, 0.2, 0.3);
  twice.steps.push_back(MeasureStep{0, 0.0, {}, {}});
  diags = check_pattern(twice, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("node 0 is measured twice") != std::string::npos);

  MeasurementPattern uncorrected = chain3_pattern(0.1, 0.2, 0.3);
  uncorrected.corrections.clear();
  diags = check_pattern(uncorrected, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("output node 3 has no correction") != std::string::npos);

  MeasurementPattern stray = chain3_pattern(0.1, 0.2, 0.3);
  stray.corrections.push_back(OutputCorrection{1, {}, {}});
  diags = check_pattern(stray, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("correction targets non-output node 1") != std::string::npos);
}

TEST_CASE("the checker reports schedule and locality defects") {
  const ClusterGraph g = chain3_graph();

  MeasurementPattern backwards = chain3_pattern(0.1, 0.2, 0.3);
  std::swap(backwards.steps[0], backwards.steps[1]);
  auto diags = check_pattern(backwards, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("not measured earlier") != std::string::npos);

  MeasurementPattern nonlocal = chain3_pattern(0.1, 0.2, 0.3);
  nonlocal.steps[2].sign_deps = {0};  // sign must come from the predecessor
  diags = check_pattern(nonlocal, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("violates locality") != std::string::npos);

  MeasurementPattern dup = chain3_pattern(0.1, 0.2, 0.3);
  dup.steps[1].sign_deps = {0, 0};
  diags = check_pattern(dup, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("twice") != std::string::npos);

  MeasurementPattern range = chain3_pattern(0.1, 0.2, 0.3);
  range.steps[1].sign_deps = {99};
  diags = check_pattern(range, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("out of range") != std::string::npos);

  MeasurementPattern cross = chain3_pattern(0.1, 0.2, 0.3);
  cross.corrections[0].z_deps = {0};  // Z must come from the second predecessor
  diags = check_pattern(cross, g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("violates locality") != std::string::npos);
}

TEST_CASE("a corrected single segment reproduces the rotated input") {
  ClusterGraph g;
  g.add_wire("w", 2);
  MeasurementPattern p;
  p.steps = {MeasureStep{0, 0.9, {}, {}}};
  p.corrections = {OutputCorrection{1, {0}, {}}};

  const std::vector<cplx> expected =
      (mat::hadamard() * mat::zrot(0.9)).apply({kPsi[0], kPsi[1]});
  for (int s : {0, 1}) {
    const RunResult r = execute(g, p, {{"w", kPsi}}, ForceBits{{s}}, 0);
    CHECK(r.branch_probability == doctest::Approx(0.5));
    CHECK(r.outcomes.bit(0) == s);
    const cplx got0 = r.state.amplitudes()[s];
    const cplx got1 = r.state.amplitudes()[2 | s];
    CHECK(std::abs(got0 - expected[0]) <= 1e-12);
    CHECK(std::abs(got1 - expected[1]) <= 1e-12);
  }
}

TEST_CASE("a corrected chain reproduces the composed rotations in every branch") {
  const ClusterGraph g = chain3_graph();
  const MeasurementPattern p = chain3_pattern(0.7, 1.1, 2.3);
  const CMatrix u = mat::hadamard() * mat::zrot(2.3) * mat::hadamard() *
                    mat::zrot(1.1) * mat::hadamard() * mat::zrot(0.7);
  const std::vector<cplx> expected = u.apply({kPsi[0], kPsi[1]});

  for (int branch = 0; branch < 8; ++branch) {
    const std::vector<int> bits{branch & 1, (branch >> 1) & 1, (branch >> 2) & 1};
    const RunResult r = execute(g, p, {{"w", kPsi}}, ForceBits{bits}, 0);
    CHECK(std::abs(r.branch_probability - 0.125) <= 1e-12);

    std::size_t base = 0;
    for (std::size_t q : {0u, 1u, 2u}) {
      base |= static_cast<std::size_t>(r.state.collapsed_bit(q)) << q;
    }
    const cplx got0 = r.state.amplitudes()[base];
    const cplx got1 = r.state.amplitudes()[base | 8];
    const cplx overlap = std::conj(expected[0]) * got0 + std::conj(expected[1]) * got1;
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-10);
  }
}

TEST_CASE("execute validates its inputs") {
  const ClusterGraph g = chain3_graph();
  const MeasurementPattern p = chain3_pattern(0.7, 1.1, 2.3);

  CHECK_THROWS_AS(execute(g, p, {{"w", kPsi}}, ForceBits{{0, 1}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(execute(g, p, {}, SampleAll{}, 0), std::invalid_argument);
  CHECK_THROWS_AS(execute(g, p, {{"w", kPsi}, {"nope", kPsi}}, SampleAll{}, 0),
                  std::invalid_argument);

  MeasurementPattern broken = p;
  broken.corrections.clear();
  CHECK_THROWS_AS(execute(g, broken, {{"w", kPsi}}, SampleAll{}, 0),
                  std::invalid_argument);

  ClusterGraph bad;
  bad.add_wire("a", 4);
  bad.add_wire("b", 3);
  bad.add_wire("c", 3);
  bad.add_junction(1, 5);
  bad.add_junction(2, 8);
  CHECK_THROWS_AS(execute(bad, p, {{"a", kPsi}}, SampleAll{}, 0),
                  std::invalid_argument);
}

TEST_CASE("sampled runs replay exactly for equal seeds") {
  const ClusterGraph g = hbranch_graph();
  const MeasurementPattern p = hbranch_pattern(0.7, 1.1, 2.3, 0.4);
  const std::map<std::string, std::array<cplx, 2>> inputs{
      {"a", kPsi}, {"b", {cplx{0.8, 0.0}, cplx{0.0, 0.6}}}};

  const RunResult r1 = execute(g, p, inputs, SampleAll{}, 99);
  const RunResult r2 = execute(g, p, inputs, SampleAll{}, 99);
  REQUIRE(r1.outcomes.entries().size() == r2.outcomes.entries().size());
  for (std::size_t i = 0; i < r1.outcomes.entries().size(); ++i) {
    CHECK(r1.outcomes.entries()[i].qubit == r2.outcomes.entries()[i].qubit);
    CHECK(r1.outcomes.entries()[i].bit == r2.outcomes.entries()[i].bit);
  }
  for (std::size_t i = 0; i < r1.state.amplitudes().size(); ++i) {
    CHECK(std::abs(r1.state.amplitudes()[i] - r2.state.amplitudes()[i]) == 0.0);
  }
  CHECK(r1.seed == 99);
}
