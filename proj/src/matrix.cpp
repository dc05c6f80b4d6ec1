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

#include "clusterflow/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clusterflow {

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t dim, std::initializer_list<cplx> entries)
    : dim_(dim), data_(entries) {
  if (data_.size() != dim * dim) {
    throw std::invalid_argument("matrix initializer size does not match dimension");
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix product dimension mismatch");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const cplx aik = at(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        out.at(i, j) += aik * rhs.at(k, j);
      }
    }
  }
  return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix sum dimension mismatch");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix difference dimension mismatch");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

CMatrix CMatrix::scaled(cplx factor) const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out.at(j, i) = std::conj(at(i, j));
    }
  }
  return out;
}

cplx CMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::max_abs_diff(const CMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix comparison dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m = std::max(m, std::abs(data_[i] - rhs.data_[i]));
  }
  return m;
}

double CMatrix::unitarity_deviation() const {
  return (adjoint() * (*this)).max_abs_diff(identity(dim_));
}

bool CMatrix::is_unitary(double tol) const { return unitarity_deviation() <= tol; }

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& vec) const {
  if (vec.size() != dim_) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<cplx> out(dim_, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out[i] += at(i, j) * vec[j];
    }
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  CMatrix out(da * db);
  for (std::size_t ia = 0; ia < da; ++ia) {
    for (std::size_t ja = 0; ja < da; ++ja) {
      const cplx f = a.at(ia, ja);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < db; ++ib) {
        for (std::size_t jb = 0; jb < db; ++jb) {
          out.at(ia * db + ib, ja * db + jb) = f * b.at(ib, jb);
        }
      }
    }
  }
  return out;
}

namespace mat {

CMatrix identity2() { return CMatrix::identity(2); }

CMatrix pauli_x() { return CMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

CMatrix pauli_z() { return CMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

CMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix(2, {s, s, s, -s});
}

CMatrix zrot(double a) {
  return CMatrix(2, {std::polar(1.0, -a / 2.0), 0.0, 0.0, std::polar(1.0, a / 2.0)});
}

CMatrix xrot(double b) {
  const cplx c{std::cos(b / 2.0), 0.0};
  const cplx s{0.0, -std::sin(b / 2.0)};
  return CMatrix(2, {c, s, s, c});
}

CMatrix cz() {
  CMatrix m = CMatrix::identity(4);
  m.at(3, 3) = -1.0;
  return m;
}

}  // namespace mat

}  // namespace clusterflow
