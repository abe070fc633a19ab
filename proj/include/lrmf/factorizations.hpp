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

#ifndef LRMF_FACTORIZATIONS_HPP_
#define LRMF_FACTORIZATIONS_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "lrmf/tri_matrix.hpp"
#include "lrmf/workload.hpp"

namespace lrmf {

// The factorization catalog for A_chi = B * C:
//   kPrefixScaled   B = A_1^{1/2},                 C = A_1^{1/2} D
//   kIdentityRight  B = A_chi,                     C = I
//   kIdentityLeft   B = I,                         C = A_chi
//   kSquareRoot     B = C = A_chi^{1/2}
//   kLrAware        B = A_chi (A_chi^Toep)^{-1/2}, C = (A_chi^Toep)^{1/2}
//   kPrefixSqrt     B = A_chi A_1^{-1/2},          C = A_1^{1/2}
//   kBisr           C = inverse of the width-p banding of A^{-1/2}
enum class Strategy {
  kPrefixScaled,
  kIdentityRight,
  kIdentityLeft,
  kSquareRoot,
  kLrAware,
  kPrefixSqrt,
  kBisr,
};

// Which workload the banded inverse square root is taken from: the prefix-sum
// matrix A_1 or the schedule-scaled A_chi.
enum class BisrBase { kPrefixWorkload, kLrWorkload };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);
std::string to_string(BisrBase b);
BisrBase bisr_base_from_string(const std::string& name);

struct Factorization {
  Strategy strategy = Strategy::kIdentityRight;
  LowerTriangular b;
  LowerTriangular c;
  Workload workload;
  double residual = 0.0;  // max |BC - A_chi| at construction
  std::optional<std::size_t> bandwidth;  // BISR only
  std::optional<BisrBase> base;          // BISR only
  // BISR only: the banded matrix M = band(A^{-1/2}, p), i.e. C^{-1}, for
  // O(p d)-memory streaming noise.
  std::optional<LowerTriangular> c_inverse_band;
};

// Builds the requested single-epoch factorization. Throws if the required
// square root does not exist (nonpositive diagonal). Strategy kBisr is
// constructed through bisr() instead.
Factorization factorize(const Workload& w, Strategy strategy);

// Banded inverse square root with bandwidth 1 <= p <= n: with
// M = band(A^{-1/2}, p) for the chosen base workload A, the factorization is
// C = M^{-1} and B = A_chi * M, which is exact by construction.
Factorization bisr(const Workload& w, std::size_t p, BisrBase base);

// A factorization persists as a directory: metadata JSON plus two matrix
// files in the binary tri-matrix format.
void save_factorization(const std::filesystem::path& dir, const Factorization& f);
Factorization load_factorization(const std::filesystem::path& dir);

}  // namespace lrmf

#endif  // LRMF_FACTORIZATIONS_HPP_
