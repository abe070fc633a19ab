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

#ifndef LRMF_BOUNDS_HPP_
#define LRMF_BOUNDS_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "lrmf/metrics.hpp"
#include "lrmf/schedules.hpp"

namespace lrmf {

// Lower bounds over all factorizations of A_chi (natural logarithms
// throughout):
//   inf MaxSE  >= max_t (1/pi) (min_{j<=t} chi_j) ln t
//   inf MeanSE >= max_t (1/pi) sqrt(t/n) (min_{j<=t} chi_j) ln t
struct BoundReport {
  double lb_maxse = 0.0;
  double lb_meanse = 0.0;
  std::size_t argmax_maxse = 1;   // maximizing t, 1-based
  std::size_t argmax_meanse = 1;
};

BoundReport lb_single(const Schedule& s);

// Multi-participation lower bound under b-min separation: the max of
//   max_t sqrt(k) t chi_t (min_{j<=t} chi_j) ln(t) / (pi sqrt(2) n)
// and the participation-decay sum
//   sum_{j=0}^{k-1} chi_{1+jb} (1 - j/(k-1)).
// At k = 1 the sum has no defined weight; the single participation
// contributes chi_1 = 1 and the bound is max(term1, 1).
double lb_multi(const Schedule& s, const ParticipationSchema& schema);

// Closed-form growth-rate predictors for the exponential-decay error bounds,
// evaluated with unit constant. Trend diagnostics only, never an absolute
// value.
enum class RateFamily {
  kMaxseLrAware,     // ln(n / ln(1/beta))
  kMeanseLrAware,    // sqrt(ln n / ln(1/beta)) sqrt(ln(n / ln(1/beta)))
  kMaxsePrefixExp,   // sqrt(ln n) sqrt(ln(n / ln(1/beta)))
  kMeansePrefixExp,  // ln n / sqrt(ln(1/beta))
  kMultiPrefixExp,   // (sqrt(k) ln n + k) / sqrt(ln(1/beta))
};

std::string to_string(RateFamily f);
RateFamily rate_family_from_string(const std::string& name);

double rate_predictor(RateFamily family, std::size_t n, double beta,
                      std::optional<std::size_t> b = std::nullopt,
                      std::optional<std::size_t> k = std::nullopt);

}  // namespace lrmf

#endif  // LRMF_BOUNDS_HPP_
