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

#include "clusterflow/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterflow {

namespace {

constexpr double kForcedBranchFloor = 1e-12;

/// Uniform double in [0,1) from the top 53 bits of the generator output.
/// Avoids std::uniform_real_distribution, whose stream is not pinned down by
/// the standard, so seeded runs replay identically across toolchains.
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

CMatrix Gate::matrix() const {
  switch (kind) {
    case Kind::H:
      return mat::hadamard();
    case Kind::X:
      return mat::pauli_x();
    case Kind::Z:
      return mat::pauli_z();
    case Kind::ZRot:
      return mat::zrot(angle);
    case Kind::XRot:
      return mat::xrot(angle);
    case Kind::CZ:
      return mat::cz();
  }
  throw std::logic_error("unknown gate kind");
}

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      amps_(std::size_t{1} << num_qubits, cplx{0.0, 0.0}),
      collapsed_(num_qubits, -1) {}

StateVector StateVector::init_register(
    std::size_t num_qubits,
    const std::map<std::size_t, std::array<cplx, 2>>& inputs) {
  if (num_qubits == 0) throw std::invalid_argument("register needs at least one qubit");
  if (num_qubits > kMaxQubits) {
    throw std::invalid_argument("register of " + std::to_string(num_qubits) +
                                " qubits exceeds the " +
                                std::to_string(kMaxQubits) + "-qubit limit");
  }
  for (const auto& [qubit, amp] : inputs) {
    if (qubit >= num_qubits) {
      throw std::invalid_argument("input state assigned to qubit " +
                                  std::to_string(qubit) + " outside the register");
    }
    const double n2 = std::norm(amp[0]) + std::norm(amp[1]);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-10) {
      throw std::invalid_argument("input state for qubit " + std::to_string(qubit) +
                                  " is not normalized");
    }
  }

  StateVector s(num_qubits);
  const double plus = 1.0 / std::sqrt(2.0);
  s.amps_[0] = 1.0;
  std::size_t filled = 1;  // amplitudes span qubits [0, k) after step k
  for (std::size_t q = 0; q < num_qubits; ++q) {
    cplx a0{plus, 0.0};
    cplx a1{plus, 0.0};
    if (auto it = inputs.find(q); it != inputs.end()) {
      a0 = it->second[0];
      a1 = it->second[1];
    }
    for (std::size_t i = 0; i < filled; ++i) {
      const cplx base = s.amps_[i];
      s.amps_[i] = base * a0;
      s.amps_[i + filled] = base * a1;
    }
    filled <<= 1;
  }
  return s;
}

bool StateVector::measured(std::size_t qubit) const {
  check_target(qubit);
  return collapsed_[qubit] >= 0;
}

int StateVector::collapsed_bit(std::size_t qubit) const {
  check_target(qubit);
  if (collapsed_[qubit] < 0) {
    throw std::logic_error("qubit " + std::to_string(qubit) + " has not been measured");
  }
  return collapsed_[qubit];
}

std::size_t StateVector::num_measured() const {
  std::size_t n = 0;
  for (std::int8_t c : collapsed_) n += (c >= 0) ? 1 : 0;
  return n;
}

void StateVector::check_target(std::size_t qubit) const {
  if (qubit >= num_qubits_) {
    throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                " outside register of " + std::to_string(num_qubits_));
  }
}

void StateVector::apply(const Gate& gate, std::size_t target) {
  if (gate.arity() != 1) {
    throw std::invalid_argument("two-qubit gate applied to a single target");
  }
  check_target(target);
  if (collapsed_[target] >= 0) {
    throw std::logic_error("gate applied to already measured qubit " +
                           std::to_string(target));
  }
  const CMatrix m = gate.matrix();
  const cplx m00 = m.at(0, 0), m01 = m.at(0, 1);
  const cplx m10 = m.at(1, 0), m11 = m.at(1, 1);
  const std::size_t bit = std::size_t{1} << target;
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & bit) continue;
    const cplx a0 = amps_[base];
    const cplx a1 = amps_[base | bit];
    amps_[base] = m00 * a0 + m01 * a1;
    amps_[base | bit] = m10 * a0 + m11 * a1;
  }
}

void StateVector::apply(const Gate& gate, std::size_t target_a, std::size_t target_b) {
  if (gate.arity() != 2) {
    throw std::invalid_argument("single-qubit gate applied to two targets");
  }
  check_target(target_a);
  check_target(target_b);
  if (target_a == target_b) {
    throw std::invalid_argument("two-qubit gate needs distinct targets");
  }
  if (collapsed_[target_a] >= 0 || collapsed_[target_b] >= 0) {
    throw std::logic_error("gate applied to already measured qubit");
  }
  // Only CZ reaches here; it is diagonal and symmetric in its targets.
  const std::size_t mask = (std::size_t{1} << target_a) | (std::size_t{1} << target_b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

MeasureResult StateVector::measure(std::size_t qubit, const MeasurePolicy& policy,
                                   std::mt19937_64& rng) {
  check_target(qubit);
  if (collapsed_[qubit] >= 0) {
    throw std::logic_error("qubit " + std::to_string(qubit) + " measured twice");
  }
  const std::size_t bit = std::size_t{1} << qubit;
  double p1 = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p1 += std::norm(amps_[i]);
  }
  const double total = norm();
  p1 /= (total * total);

  int outcome = 0;
  if (std::holds_alternative<Forced>(policy)) {
    outcome = std::get<Forced>(policy).bit;
    if (outcome != 0 && outcome != 1) {
      throw std::invalid_argument("forced measurement bit must be 0 or 1");
    }
  } else {
    outcome = (uniform53(rng) < p1) ? 1 : 0;
  }

  const double p = (outcome == 1) ? p1 : 1.0 - p1;
  if (p < kForcedBranchFloor) {
    throw std::runtime_error("measurement branch for qubit " + std::to_string(qubit) +
                             " has probability " + std::to_string(p) +
                             "; cannot collapse onto it");
  }
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const bool hit = ((i & bit) != 0) == (outcome == 1);
    amps_[i] = hit ? amps_[i] * scale : cplx{0.0, 0.0};
  }
  collapsed_[qubit] = static_cast<std::int8_t>(outcome);
  return {outcome, p};
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const cplx& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product of registers with different qubit counts");
  }
  cplx acc{0.0, 0.0};
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  for (std::size_t i = 0; i < va.size(); ++i) acc += std::conj(va[i]) * vb[i];
  return acc;
}

PhaseComparison equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                         double tol) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("phase comparison of registers with different qubit counts");
  }
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    if (a.measured(q) != b.measured(q)) {
      throw std::invalid_argument("phase comparison of registers with different measured sets");
    }
  }
  const cplx ov = inner_product(a, b);
  PhaseComparison cmp;
  cmp.fidelity = std::norm(ov);
  cmp.phase = std::arg(ov);
  cmp.equal = cmp.fidelity >= 1.0 - tol;
  return cmp;
}

}  // namespace clusterflow
