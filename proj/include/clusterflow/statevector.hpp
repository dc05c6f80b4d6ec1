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

#ifndef CLUSTERFLOW_STATEVECTOR_HPP
#define CLUSTERFLOW_STATEVECTOR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <variant>
#include <vector>

#include "clusterflow/matrix.hpp"

namespace clusterflow {

/// Register size guard. 2^24 amplitudes is the largest register the dense
/// representation is allowed to allocate.
inline constexpr std::size_t kMaxQubits = 24;

/// Gate vocabulary of the simulator. Everything a pattern run needs reduces
/// to these six.
struct Gate {
  enum class Kind { H, X, Z, ZRot, XRot, CZ };

  Kind kind{Kind::H};
  double angle{0.0};

  static Gate h() { return {Kind::H, 0.0}; }
  static Gate x() { return {Kind::X, 0.0}; }
  static Gate z() { return {Kind::Z, 0.0}; }
  static Gate zrot(double a) { return {Kind::ZRot, a}; }
  static Gate xrot(double b) { return {Kind::XRot, b}; }
  static Gate cz() { return {Kind::CZ, 0.0}; }

  std::size_t arity() const { return kind == Kind::CZ ? 2 : 1; }
  CMatrix matrix() const;
};

/// Measurement policies: Sampled draws the outcome from the RNG, Forced
/// collapses onto the requested bit (used for branch enumeration).
struct Sampled {};
struct Forced {
  int bit{0};
};
using MeasurePolicy = std::variant<Sampled, Forced>;

struct MeasureResult {
  int bit{0};
  /// Born probability of the recorded bit before collapse.
  double probability{0.0};
};

/// Dense state vector over qubits 0..n-1. Qubit k owns bit k of the
/// amplitude index (qubit 0 is least significant). Measured qubits stay in
/// the register, pinned to their collapsed basis state.
class StateVector {
 public:
  /// Builds the product state where each qubit listed in `inputs` starts in
  /// the given single-qubit state and every other qubit starts in |+>.
  static StateVector init_register(
      std::size_t num_qubits,
      const std::map<std::size_t, std::array<cplx, 2>>& inputs);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  bool measured(std::size_t qubit) const;
  /// Collapsed bit of a measured qubit. Throws if the qubit is still live.
  int collapsed_bit(std::size_t qubit) const;
  std::size_t num_measured() const;

  void apply(const Gate& gate, std::size_t target);
  void apply(const Gate& gate, std::size_t target_a, std::size_t target_b);

  /// Projective Z measurement. Renormalizes the surviving branch. Forcing a
  /// bit whose Born probability is below 1e-12 is rejected as an attempt to
  /// select an impossible branch.
  MeasureResult measure(std::size_t qubit, const MeasurePolicy& policy,
                        std::mt19937_64& rng);

  double norm() const;

 private:
  explicit StateVector(std::size_t num_qubits);
  void check_target(std::size_t qubit) const;

  std::size_t num_qubits_{0};
  std::vector<cplx> amps_;
  std::vector<std::int8_t> collapsed_;  // -1 while live, else the pinned bit
};

cplx inner_product(const StateVector& a, const StateVector& b);

struct PhaseComparison {
  bool equal{false};
  /// |<a|b>|^2; 1 means equal up to a global phase.
  double fidelity{0.0};
  /// arg(<a|b>), meaningful only when fidelity is near 1.
  double phase{0.0};
};

/// Compares two registers of identical shape (same qubit count, same set of
/// measured qubits) up to a global phase.
PhaseComparison equal_up_to_global_phase(const StateVector& a,
                                         const StateVector& b, double tol);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_STATEVECTOR_HPP
