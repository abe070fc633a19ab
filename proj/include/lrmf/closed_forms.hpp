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

#ifndef LRMF_CLOSED_FORMS_HPP_
#define LRMF_CLOSED_FORMS_HPP_

#include <cstddef>
#include <vector>

#include "lrmf/tri_matrix.hpp"

namespace lrmf {

// Exponential decay chi_t = beta^{(t-1)/(n-1)} = alpha^{t-1}.
struct ExpDecayParams {
  std::size_t n = 0;
  double beta = 0.0;
  double alpha = 0.0;  // beta^{1/(n-1)}
};

ExpDecayParams exp_decay_params(std::size_t n, double beta);

// Coefficients r_j of the square root of the prefix-sum matrix,
// r_j = binom(2j, j) / 4^j, computed by the stable recurrence
// r_j = r_{j-1} (2j - 1) / (2j).
std::vector<double> prefix_sqrt_coeffs(std::size_t n);

// Coefficients of the inverse square root of the prefix-sum matrix:
// rt_0 = 1 and rt_j = -r_j / (2j - 1) for j >= 1.
std::vector<double> prefix_inv_sqrt_coeffs(std::size_t n);

// Learning-rate-aware correlation matrix for exponential decay: the Toeplitz
// square root of the exponential workload, with coefficients alpha^j r_j.
ToeplitzLT c_alpha(const ExpDecayParams& p);

// A column-scaled Toeplitz matrix: entry (m, l) = colscale_l * coeffs_{m-l}
// for l <= m (0-based).
struct ScaledToeplitzLT {
  std::vector<double> coeffs;
  std::vector<double> colscale;

  std::size_t size() const { return colscale.size(); }
  double operator()(std::size_t i, std::size_t j) const {
    return colscale[j] * coeffs[i - j];
  }
  LowerTriangular materialize() const;
};

// Products g_d = prod_{k=1}^{d} (1 - alpha^{k-1/2}) / (1 - alpha^k); g_0 = 1.
// Evaluated in log-space when alpha is close to 1.
std::vector<double> exp_sqrt_gcoeffs(double alpha, std::size_t n);

// Closed-form square root of the exponential workload A_chi:
// entry (m, l) = alpha^{(l-1)/2} g_{m-l} (1-based indices).
ScaledToeplitzLT exp_workload_sqrt(const ExpDecayParams& p);

// Closed-form inverse of exp_workload_sqrt:
// entry (m, l) = -(1 - sqrt(alpha)) alpha^{-l/2} g_{m-l} / (1 - alpha^{m-l-1/2}),
// whose diagonal reduces to alpha^{-(l-1)/2}.
ScaledToeplitzLT exp_workload_inv_sqrt(const ExpDecayParams& p);

// Left factor of the learning-rate-aware factorization, B = A_chi * C_alpha^{-1},
// computed by triangular solve.
LowerTriangular b_alpha(const ExpDecayParams& p);

// Max deviation between b_alpha and its explicit coefficient form
//   B_{m,l} = alpha^{2m-l-1} r_{m-l} + alpha^{l-1} (1 - alpha^2)
//             sum_{t=0}^{m-l-1} alpha^{2t} r_t .
double b_alpha_closed_form_deviation(const ExpDecayParams& p);

// q-Gamma function at 1/2, via the defining q-Pochhammer products truncated
// once a factor differs from 1 by less than 1e-16.
double q_gamma_half(double q);

}  // namespace lrmf

#endif  // LRMF_CLOSED_FORMS_HPP_
