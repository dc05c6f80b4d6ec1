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

#ifndef CLUSTERFLOW_MATRIX_HPP
#define CLUSTERFLOW_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace clusterflow {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Dimensions stay tiny here (gates and
/// brute-force reference unitaries), so no effort is spent on blocking.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::initializer_list<cplx> entries);

  static CMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& at(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix scaled(cplx factor) const;
  CMatrix adjoint() const;
  cplx trace() const;

  /// Largest entry magnitude; the distance metric used by identity checks.
  double max_abs() const;
  double max_abs_diff(const CMatrix& rhs) const;
  bool is_unitary(double tol) const;
  double unitarity_deviation() const;

  std::vector<cplx> apply(const std::vector<cplx>& vec) const;

 private:
  std::size_t dim_{0};
  std::vector<cplx> data_;
};

/// Kronecker product with the left factor on the high-order index bits.
CMatrix kron(const CMatrix& a, const CMatrix& b);

namespace mat {

CMatrix identity2();
CMatrix pauli_x();
CMatrix pauli_z();
CMatrix hadamard();
/// diag(e^{-i a/2}, e^{+i a/2})
CMatrix zrot(double a);
/// cos(b/2) I - i sin(b/2) X
CMatrix xrot(double b);
/// diag(1, 1, 1, -1)
CMatrix cz();

}  // namespace mat

}  // namespace clusterflow

#endif  // CLUSTERFLOW_MATRIX_HPP
