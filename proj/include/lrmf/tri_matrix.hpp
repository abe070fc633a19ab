// Copyright 2026 The lrmf Authors
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

#ifndef LRMF_TRI_MATRIX_HPP_
#define LRMF_TRI_MATRIX_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace lrmf {

// Dense lower-triangular matrix, packed row-major: row i holds i+1 entries.
// Entry (i, j) is defined for j <= i only (0-based); everything above the
// diagonal is an implicit zero.
class LowerTriangular {
 public:
  LowerTriangular() = default;
  explicit LowerTriangular(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {}

  static LowerTriangular Identity(std::size_t n);
  // The prefix-sum matrix: all ones on and below the diagonal.
  static LowerTriangular Ones(std::size_t n);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * (i + 1) / 2 + j];
  }
  double& at(std::size_t i, std::size_t j) {
    return data_[i * (i + 1) / 2 + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * (i + 1) / 2, i + 1};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * (i + 1) / 2, i + 1};
  }

  std::span<const double> packed() const { return data_; }
  std::span<double> packed() { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Lower-triangular Toeplitz matrix, stored as its first column c_0..c_{n-1};
// entry (i, j) equals c_{i-j}.
class ToeplitzLT {
 public:
  ToeplitzLT() = default;
  explicit ToeplitzLT(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(std::size_t i, std::size_t j) const {
    return coeffs_[i - j];
  }

  LowerTriangular materialize() const;

 private:
  std::vector<double> coeffs_;
};

using TriMatrix = std::variant<LowerTriangular, ToeplitzLT>;

// Exact triangular product, O(n^3). Throws std::invalid_argument on a
// dimension mismatch.
LowerTriangular lt_multiply(const LowerTriangular& a, const LowerTriangular& b);

// Inverse by forward substitution, column by column. Requires a strictly
// positive diagonal.
LowerTriangular lt_inverse(const LowerTriangular& a);

// The unique lower-triangular square root with positive diagonal, computed
// by the triangular-sqrt recurrence sweeping subdiagonals outward:
//   S_ii = sqrt(A_ii),  S_ij = (A_ij - sum_{j<k<i} S_ik S_kj) / (S_ii + S_jj).
LowerTriangular lt_sqrt(const LowerTriangular& a);

// Square root of a Toeplitz operator via the coefficient series recursion
//   s_0 = sqrt(c_0),  s_k = (c_k - sum_{0<j<k} s_j s_{k-j}) / (2 s_0).
ToeplitzLT toeplitz_sqrt(const ToeplitzLT& t);

// Series reciprocal of the coefficient sequence. Requires c_0 != 0.
ToeplitzLT toeplitz_inverse(const ToeplitzLT& t);

// Coefficient convolution, i.e. the product of two Toeplitz operators.
ToeplitzLT toeplitz_multiply(const ToeplitzLT& a, const ToeplitzLT& b);

// Keeps subdiagonals 0..p-1 and nullifies entries with i - j >= p, so p = 1
// leaves only the diagonal and p = n leaves the matrix unchanged.
LowerTriangular band(const LowerTriangular& a, std::size_t p);
ToeplitzLT band(const ToeplitzLT& t, std::size_t p);

std::vector<double> col_norms(const LowerTriangular& a);
std::vector<double> col_norms(const ToeplitzLT& t);
std::vector<double> row_norms(const LowerTriangular& a);
std::vector<double> row_norms(const ToeplitzLT& t);
double frobenius(const LowerTriangular& a);
double frobenius(const ToeplitzLT& t);

double max_abs_diff(const LowerTriangular& a, const LowerTriangular& b);

// Binary matrix file: magic "LTM1", n as 8-byte little-endian unsigned, a
// one-byte dense/toeplitz flag, then 64-bit little-endian IEEE floats
// (packed triangle, or the coefficient vector).
void write_ltm(const std::filesystem::path& path, const LowerTriangular& a);
void write_ltm(const std::filesystem::path& path, const ToeplitzLT& t);
TriMatrix read_ltm(const std::filesystem::path& path);

// (i, j, value) rows for inspection.
void write_csv(const std::filesystem::path& path, const LowerTriangular& a);

}  // namespace lrmf

#endif  // LRMF_TRI_MATRIX_HPP_
