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

#ifndef LRMF_METRICS_HPP_
#define LRMF_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "lrmf/factorizations.hpp"
#include "lrmf/tri_matrix.hpp"

namespace lrmf {

// Who contributes when: a single participation per user, or repeated
// participation with at least b steps between two contributions, which
// permits at most k = ceil(n / b) of them.
struct ParticipationSchema {
  enum class Mode { kSingle, kMinSep };
  Mode mode = Mode::kSingle;
  std::size_t b = 0;
  std::size_t k = 0;

  static ParticipationSchema Single() { return {}; }
  static ParticipationSchema MinSep(std::size_t n, std::size_t b);
};

enum class SensMode { kExact, kHeuristic };

// Single-participation sensitivity: the maximum column l2 norm of C.
double sensitivity_single(const LowerTriangular& c);

// Multi-participation sensitivity under b-min separation. Requires all
// entries of C nonnegative: one user's rows change by at most 1 in l2 each,
// and with nonnegative columns all Gram inner products are nonnegative, so
// the worst case aligns every changed row along one direction and the value
// is the max over patterns pi of || sum_{i in pi} C_{:,i} ||_2.
//
// Exact mode enumerates every b-min-separated nonempty pattern (n <= 24);
// heuristic mode takes the max over single columns and over the arithmetic
// patterns {s, s+b, s+2b, ...} truncated at every length, for all offsets
// s in [1, b].
double sensitivity_multi(const LowerTriangular& c, const ParticipationSchema& schema,
                         SensMode mode);

// Frobenius lower bound ||C||_F / sqrt(2b) on the b-min-separated sensitivity.
double sens_lower_frobenius(const LowerTriangular& c, std::size_t b);

// MaxSE(B, C)  = ||B||_{2->inf} ||C||_{1->2}
// MeanSE(B, C) = (1/sqrt(n)) ||B||_F ||C||_{1->2}
// with unit noise multiplier and clip norm.
double max_se(const Factorization& f);
double mean_se(const Factorization& f);

// Multi-epoch error (1/sqrt(n)) ||B||_F sens_{k,b}(C).
double multi_error(const LowerTriangular& b, const LowerTriangular& c,
                   const ParticipationSchema& schema, SensMode mode);

struct ErrorReport {
  double sensitivity = 0.0;
  double maxse = 0.0;
  double meanse = 0.0;
  std::optional<double> multi = 0.0;  // min-separated schemas only
  std::string strategy;
  std::string schedule;
  std::size_t n = 0;
  double beta = 1.0;
};

ErrorReport evaluate(const Factorization& f,
                     const std::optional<ParticipationSchema>& schema = std::nullopt,
                     SensMode mode = SensMode::kHeuristic);

// Restores the sigma_{eps,delta} * zeta factor the unit-noise metrics drop.
ErrorReport dp_scale(ErrorReport report, double sigma_eps_delta, double zeta);

}  // namespace lrmf

#endif  // LRMF_METRICS_HPP_
