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

#include "lrmf/workload.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace lrmf;

TEST_CASE("constant schedule gives the prefix-sum workload") {
  const auto w = build_workload(make_schedule(ScheduleKind::kConstant, 3, 1.0));
  CHECK(max_abs_diff(w.a_chi, LowerTriangular::Ones(3)) == 0.0);
  for (double c : w.a_toep.coeffs()) CHECK(c == 1.0);
}

TEST_CASE("exponential n=3 beta=1/4 columns") {
  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 3, 0.25));
  // Column l of a_chi is constantly chi_l below the diagonal.
  CHECK(w.a_chi(0, 0) == 1.0);
  CHECK(w.a_chi(1, 0) == 1.0);
  CHECK(w.a_chi(2, 0) == 1.0);
  CHECK(w.a_chi(1, 1) == doctest::Approx(0.5));
  CHECK(w.a_chi(2, 1) == doctest::Approx(0.5));
  CHECK(w.a_chi(2, 2) == 0.25);
}

TEST_CASE("toeplitz workload carries chi on the subdiagonals") {
  const auto s = make_schedule(ScheduleKind::kCosine, 17, 0.2);
  const auto w = build_workload(s);
  CHECK(w.a_toep.coeffs() == s.values);
  const auto dense = w.a_toep.materialize();
  for (std::size_t i = 0; i < 17; ++i) {
    for (std::size_t j = 0; j <= i; ++j) CHECK(dense(i, j) == s.values[i - j]);
  }
}

TEST_CASE("workload reproduces the SGD recursion") {
  // Iterating theta_i = theta_{i-1} - chi_i g_i from zero stacks to -A_chi G.
  const std::size_t n = 16, d = 3;
  const auto s = make_schedule(ScheduleKind::kPolynomial, n, 0.3, 2.0);
  const auto w = build_workload(s);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> grads(n, std::vector<double>(d));
  for (auto& row : grads)
    for (auto& v : row) v = g(rng);

  std::vector<double> theta(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) theta[c] -= s.values[i] * grads[i][c];
    for (std::size_t c = 0; c < d; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += w.a_chi(i, j) * grads[j][c];
      CHECK(std::abs(theta[c] + acc) < 1e-12);
    }
  }
}
