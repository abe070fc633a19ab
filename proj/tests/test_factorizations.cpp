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

#include "lrmf/factorizations.hpp"

#include <cmath>
#include <stdexcept>
#include <filesystem>

#include "doctest.h"
#include "lrmf/closed_forms.hpp"

using namespace lrmf;

namespace {

const Strategy kAll[] = {Strategy::kPrefixScaled, Strategy::kIdentityRight,
                         Strategy::kIdentityLeft, Strategy::kSquareRoot,
                         Strategy::kLrAware,      Strategy::kPrefixSqrt};

}  // namespace

TEST_CASE("strategy names round trip") {
  for (auto s : kAll) CHECK(strategy_from_string(to_string(s)) == s);
  CHECK(strategy_from_string("bisr") == Strategy::kBisr);
  CHECK_THROWS_AS(strategy_from_string("nope"), std::invalid_argument);
  CHECK(bisr_base_from_string("prefix") == BisrBase::kPrefixWorkload);
  CHECK(bisr_base_from_string("lr") == BisrBase::kLrWorkload);
}

TEST_CASE("identity-sided strategies copy the workload") {
  const auto w = build_workload(make_schedule(ScheduleKind::kLinear, 8, 0.5));
  const auto right = factorize(w, Strategy::kIdentityRight);
  CHECK(max_abs_diff(right.b, w.a_chi) == 0.0);
  CHECK(max_abs_diff(right.c, LowerTriangular::Identity(8)) == 0.0);
  CHECK(right.residual == 0.0);

  const auto left = factorize(w, Strategy::kIdentityLeft);
  CHECK(max_abs_diff(left.b, LowerTriangular::Identity(8)) == 0.0);
  CHECK(max_abs_diff(left.c, w.a_chi) == 0.0);
}

TEST_CASE("constant schedule collapses the prefix variants") {
  // With a constant schedule the diagonal correction is the identity, so the
  // prefix-scaled and prefix-sqrt constructions both give B = C = A_1^{1/2}.
  const auto w = build_workload(make_schedule(ScheduleKind::kConstant, 16, 1.0));
  const auto a = factorize(w, Strategy::kPrefixScaled);
  const auto f = factorize(w, Strategy::kPrefixSqrt);
  const auto root = ToeplitzLT(prefix_sqrt_coeffs(16)).materialize();
  CHECK(max_abs_diff(a.b, root) < 1e-12);
  CHECK(max_abs_diff(a.c, root) < 1e-12);
  CHECK(max_abs_diff(f.b, root) < 1e-12);
  CHECK(max_abs_diff(f.c, root) < 1e-12);
}

TEST_CASE("lr-aware C on the exponential schedule is C_alpha") {
  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 3, 0.25));
  const auto e = factorize(w, Strategy::kLrAware);
  const auto c = c_alpha(exp_decay_params(3, 0.25));
  CHECK(max_abs_diff(e.c, c.materialize()) < 1e-14);
}

TEST_CASE("prefix-scaled residual on exponential n=256") {
  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 256, 0.1));
  const auto f = factorize(w, Strategy::kPrefixScaled);
  CHECK(f.residual <= 1e-10);
}

TEST_CASE("all strategies factor all schedules") {
  const ScheduleKind kinds[] = {ScheduleKind::kExponential, ScheduleKind::kPolynomial,
                                ScheduleKind::kLinear, ScheduleKind::kCosine};
  for (auto kind : kinds) {
    for (std::size_t n : {64, 256}) {
      const auto gamma = kind == ScheduleKind::kPolynomial
                             ? std::optional<double>(2.0)
                             : std::nullopt;
      const auto w = build_workload(make_schedule(kind, n, 0.1, gamma));
      for (auto s : kAll) {
        const auto f = factorize(w, s);
        CHECK(f.residual <= 1e-9 * double(n));
        CHECK(max_abs_diff(lt_multiply(f.b, f.c), w.a_chi) <= 1e-9 * double(n));
      }
    }
  }
}

TEST_CASE("bisr with full bandwidth is the exact square-root factorization") {
  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 32, 0.2));
  const auto f = bisr(w, 32, BisrBase::kLrWorkload);
  const auto root = lt_sqrt(w.a_chi);
  CHECK(max_abs_diff(f.c, root) < 1e-8);
  CHECK(max_abs_diff(f.b, root) < 1e-8);
  CHECK(f.residual < 1e-10);
  CHECK(f.bandwidth == 32);
  CHECK(f.base == BisrBase::kLrWorkload);
}

TEST_CASE("bisr with bandwidth one degenerates to identity-right") {
  const auto w = build_workload(make_schedule(ScheduleKind::kLinear, 12, 0.4));
  const auto f = bisr(w, 1, BisrBase::kPrefixWorkload);
  CHECK(max_abs_diff(f.c, LowerTriangular::Identity(12)) < 1e-14);
  CHECK(max_abs_diff(f.b, w.a_chi) < 1e-14);
}

TEST_CASE("bisr is exact by construction at every bandwidth") {
  const auto w = build_workload(make_schedule(ScheduleKind::kCosine, 64, 0.1));
  for (std::size_t p : {2, 4, 8, 16}) {
    for (auto base : {BisrBase::kPrefixWorkload, BisrBase::kLrWorkload}) {
      const auto f = bisr(w, p, base);
      CHECK(f.residual <= 1e-9 * 64);
      REQUIRE(f.c_inverse_band.has_value());
      // The stored inverse really is banded at width p and inverts C.
      const auto& m = *f.c_inverse_band;
      for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j + p <= i; ++j) CHECK(m(i, j) == 0.0);
      CHECK(max_abs_diff(lt_multiply(f.c, m), LowerTriangular::Identity(64)) < 1e-8);
    }
  }
}

TEST_CASE("factorization save and load round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "lrmf_fact_test";
  std::filesystem::remove_all(dir);

  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 10, 0.3));
  const auto f = bisr(w, 3, BisrBase::kPrefixWorkload);
  save_factorization(dir, f);
  const auto back = load_factorization(dir);
  CHECK(back.strategy == Strategy::kBisr);
  CHECK(back.bandwidth == f.bandwidth);
  CHECK(back.base == f.base);
  CHECK(max_abs_diff(back.b, f.b) == 0.0);
  CHECK(max_abs_diff(back.c, f.c) == 0.0);
  REQUIRE(back.c_inverse_band.has_value());
  CHECK(max_abs_diff(*back.c_inverse_band, *f.c_inverse_band) == 0.0);
  CHECK(back.workload.schedule.values == w.schedule.values);
  std::filesystem::remove_all(dir);
}
