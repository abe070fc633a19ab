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

#include "lrmf/tri_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <cstdint>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "lrmf/closed_forms.hpp"

using namespace lrmf;

namespace {

LowerTriangular random_well_conditioned(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  std::uniform_real_distribution<double> diag(0.1, 1.5);
  LowerTriangular a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a.at(i, j) = off(rng) / double(n);
    a.at(i, i) = diag(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("lt_multiply identity and small products") {
  const auto a1 = LowerTriangular::Ones(2);
  const auto id = LowerTriangular::Identity(2);
  CHECK(max_abs_diff(lt_multiply(id, a1), a1) == 0.0);

  const auto sq = lt_multiply(a1, a1);
  CHECK(sq(0, 0) == 1.0);
  CHECK(sq(1, 0) == 2.0);
  CHECK(sq(1, 1) == 1.0);

  CHECK_THROWS_AS(lt_multiply(a1, LowerTriangular::Identity(3)),
                  std::invalid_argument);
}

TEST_CASE("prefix-sum square root squares back, n=3") {
  // coefficients (1, 1/2, 3/8); row-3/col-1 entry of the square is
  // 3/8 + 1/4 + 3/8 = 1.
  const ToeplitzLT root(prefix_sqrt_coeffs(3));
  const auto sq = lt_multiply(root.materialize(), root.materialize());
  CHECK(max_abs_diff(sq, LowerTriangular::Ones(3)) < 1e-15);
}

TEST_CASE("lt_inverse of prefix sum is differencing") {
  const auto inv = lt_inverse(LowerTriangular::Ones(3));
  CHECK(inv(0, 0) == 1.0);
  CHECK(inv(1, 0) == -1.0);
  CHECK(inv(1, 1) == 1.0);
  CHECK(inv(2, 0) == 0.0);
  CHECK(inv(2, 1) == -1.0);

  LowerTriangular bad = LowerTriangular::Identity(2);
  bad.at(1, 1) = 0.0;
  CHECK_THROWS_AS(lt_inverse(bad), std::invalid_argument);
}

TEST_CASE("lt_inverse residual stays small at n=512") {
  const auto a = random_well_conditioned(512, 7);
  const auto prod = lt_multiply(a, lt_inverse(a));
  CHECK(max_abs_diff(prod, LowerTriangular::Identity(512)) < 1e-10 * 512);
}

TEST_CASE("lt_inverse is an involution on well-conditioned inputs") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto a = random_well_conditioned(128, seed);
    CHECK(max_abs_diff(lt_inverse(lt_inverse(a)), a) < 1e-9);
  }
}

TEST_CASE("lt_sqrt known values") {
  const auto id = LowerTriangular::Identity(4);
  CHECK(max_abs_diff(lt_sqrt(id), id) == 0.0);

  const auto s = lt_sqrt(LowerTriangular::Ones(3));
  CHECK(s(0, 0) == doctest::Approx(1.0));
  CHECK(s(1, 0) == doctest::Approx(0.5));
  CHECK(s(2, 0) == doctest::Approx(0.375));

  // chi = (1, 1/4): solve s (1 + 1/2) = 1.
  LowerTriangular a(2);
  a.at(0, 0) = 1.0;
  a.at(1, 0) = 1.0;
  a.at(1, 1) = 0.25;
  const auto t = lt_sqrt(a);
  CHECK(t(1, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(t(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("lt_sqrt squared reproduces random SPD-diagonal inputs") {
  const auto a = random_well_conditioned(64, 11);
  const auto s = lt_sqrt(a);
  CHECK(max_abs_diff(lt_multiply(s, s), a) < 1e-9);
}

TEST_CASE("toeplitz_sqrt matches lt_sqrt on materialized input") {
  const std::vector<double> ones(32, 1.0);
  const ToeplitzLT t(ones);
  const auto via_series = toeplitz_sqrt(t).materialize();
  const auto via_dense = lt_sqrt(t.materialize());
  CHECK(max_abs_diff(via_series, via_dense) < 1e-10);

  const auto r = prefix_sqrt_coeffs(32);
  for (std::size_t j = 0; j < 32; ++j) {
    CHECK(toeplitz_sqrt(t).coeffs()[j] == doctest::Approx(r[j]).epsilon(1e-12));
  }
}

TEST_CASE("toeplitz_inverse of all-ones is differencing") {
  const auto inv = toeplitz_inverse(ToeplitzLT(std::vector<double>(8, 1.0)));
  CHECK(inv.coeffs()[0] == 1.0);
  CHECK(inv.coeffs()[1] == -1.0);
  for (std::size_t j = 2; j < 8; ++j) CHECK(inv.coeffs()[j] == 0.0);
}

TEST_CASE("toeplitz inverse of r is r-tilde") {
  const ToeplitzLT r(prefix_sqrt_coeffs(64));
  const auto inv = toeplitz_inverse(r);
  const auto rt = prefix_inv_sqrt_coeffs(64);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(inv.coeffs()[j] == doctest::Approx(rt[j]).epsilon(1e-10));
  }
}

TEST_CASE("band conventions") {
  const auto a1 = LowerTriangular::Ones(4);
  CHECK(max_abs_diff(band(a1, 4), a1) == 0.0);
  CHECK(max_abs_diff(band(a1, 1), LowerTriangular::Identity(4)) == 0.0);

  const auto bi = band(a1, 2);
  CHECK(bi(2, 1) == 1.0);
  CHECK(bi(2, 0) == 0.0);
  CHECK(bi(3, 1) == 0.0);

  CHECK_THROWS_AS(band(a1, 0), std::invalid_argument);
  CHECK_THROWS_AS(band(a1, 5), std::invalid_argument);
}

TEST_CASE("band is idempotent and nests") {
  const auto a = random_well_conditioned(24, 3);
  for (std::size_t p : {1, 3, 8, 24}) {
    for (std::size_t q : {2, 5, 24}) {
      const auto lhs = band(band(a, p), q);
      const auto rhs = band(a, std::min(p, q));
      CHECK(max_abs_diff(lhs, rhs) == 0.0);
    }
  }
}

TEST_CASE("norms") {
  const auto id = LowerTriangular::Identity(5);
  for (double v : col_norms(id)) CHECK(v == 1.0);
  CHECK(frobenius(id) == doctest::Approx(std::sqrt(5.0)));

  const auto a1 = LowerTriangular::Ones(4);
  CHECK(col_norms(a1)[0] == doctest::Approx(2.0));
  CHECK(row_norms(a1)[3] == doctest::Approx(2.0));

  // sqrt(1 + 1/4 + 9/64) on the first column of the n=3 prefix root.
  const auto root = ToeplitzLT(prefix_sqrt_coeffs(3));
  CHECK(col_norms(root)[0] == doctest::Approx(std::sqrt(89.0 / 64.0)));
  CHECK(col_norms(root.materialize())[0] == doctest::Approx(std::sqrt(89.0 / 64.0)));

  // Toeplitz norms agree with the dense ones.
  const ToeplitzLT t(prefix_sqrt_coeffs(16));
  const auto dense = t.materialize();
  CHECK(frobenius(t) == doctest::Approx(frobenius(dense)));
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(col_norms(t)[j] == doctest::Approx(col_norms(dense)[j]));
    CHECK(row_norms(t)[j] == doctest::Approx(row_norms(dense)[j]));
  }
}

TEST_CASE("matrix file round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "lrmf_tri_test";
  std::filesystem::create_directories(dir);

  const auto a = random_well_conditioned(9, 21);
  write_ltm(dir / "a.ltm", a);
  const auto back = std::get<LowerTriangular>(read_ltm(dir / "a.ltm"));
  CHECK(max_abs_diff(a, back) == 0.0);

  const ToeplitzLT t(prefix_sqrt_coeffs(7));
  write_ltm(dir / "t.ltm", t);
  const auto tback = std::get<ToeplitzLT>(read_ltm(dir / "t.ltm"));
  CHECK(tback.coeffs() == t.coeffs());

  write_csv(dir / "a.csv", a);
  CHECK(std::filesystem::file_size(dir / "a.csv") > 0);
  std::filesystem::remove_all(dir);
}
