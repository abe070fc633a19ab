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

#include "lrmf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lrmf {

BoundReport lb_single(const Schedule& s) {
  if (s.n < 2) throw std::invalid_argument("lb_single: n must be >= 2");
  BoundReport r;
  const double n = static_cast<double>(s.n);
  double running_min = 1.0;
  for (std::size_t t = 1; t <= s.n; ++t) {
    running_min = std::min(running_min, s.values[t - 1]);
    const double base = running_min * std::log(static_cast<double>(t)) / std::numbers::pi;
    if (base > r.lb_maxse) {
      r.lb_maxse = base;
      r.argmax_maxse = t;
    }
    const double mean = base * std::sqrt(static_cast<double>(t) / n);
    if (mean > r.lb_meanse) {
      r.lb_meanse = mean;
      r.argmax_meanse = t;
    }
  }
  return r;
}

double lb_multi(const Schedule& s, const ParticipationSchema& schema) {
  if (schema.mode != ParticipationSchema::Mode::kMinSep) {
    throw std::invalid_argument("lb_multi: requires a min-separated schema");
  }
  const std::size_t n = s.n;
  const std::size_t k = schema.k;
  const std::size_t b = schema.b;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);

  double term1 = 0.0;
  double running_min = 1.0;
  for (std::size_t t = 1; t <= n; ++t) {
    running_min = std::min(running_min, s.values[t - 1]);
    const double v = std::sqrt(kd) * static_cast<double>(t) * s.values[t - 1] *
                     running_min * std::log(static_cast<double>(t)) /
                     (std::numbers::pi * std::numbers::sqrt2 * nd);
    term1 = std::max(term1, v);
  }

  double term2;
  if (k == 1) {
    term2 = s.values[0];  // single participation, no decay sum
  } else {
    term2 = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t idx = 1 + j * b;  // 1-based participation step
      if (idx > n) {
        throw std::invalid_argument("lb_multi: participation index exceeds n");
      }
      term2 += s.values[idx - 1] *
               (1.0 - static_cast<double>(j) / static_cast<double>(k - 1));
    }
  }
  return std::max(term1, term2);
}

std::string to_string(RateFamily f) {
  switch (f) {
    case RateFamily::kMaxseLrAware: return "maxse_lr_aware";
    case RateFamily::kMeanseLrAware: return "meanse_lr_aware";
    case RateFamily::kMaxsePrefixExp: return "maxse_prefix_exp";
    case RateFamily::kMeansePrefixExp: return "meanse_prefix_exp";
    case RateFamily::kMultiPrefixExp: return "multi_prefix_exp";
  }
  throw std::invalid_argument("unknown rate family");
}

RateFamily rate_family_from_string(const std::string& name) {
  if (name == "maxse_lr_aware") return RateFamily::kMaxseLrAware;
  if (name == "meanse_lr_aware") return RateFamily::kMeanseLrAware;
  if (name == "maxse_prefix_exp") return RateFamily::kMaxsePrefixExp;
  if (name == "meanse_prefix_exp") return RateFamily::kMeansePrefixExp;
  if (name == "multi_prefix_exp") return RateFamily::kMultiPrefixExp;
  throw std::invalid_argument("unknown rate family: " + name);
}

double rate_predictor(RateFamily family, std::size_t n, double beta,
                      std::optional<std::size_t> b, std::optional<std::size_t> k) {
  if (n < 2 || !(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("rate_predictor: require n >= 2, beta in (0, 1)");
  }
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_inv_beta = std::log(1.0 / beta);
  const double ln_ratio = std::log(static_cast<double>(n) / ln_inv_beta);
  switch (family) {
    case RateFamily::kMaxseLrAware:
      return ln_ratio;
    case RateFamily::kMeanseLrAware:
      return std::sqrt(ln_n / ln_inv_beta) * std::sqrt(ln_ratio);
    case RateFamily::kMaxsePrefixExp:
      return std::sqrt(ln_n) * std::sqrt(ln_ratio);
    case RateFamily::kMeansePrefixExp:
      return ln_n / std::sqrt(ln_inv_beta);
    case RateFamily::kMultiPrefixExp: {
      if (!k) {
        if (!b) throw std::invalid_argument("rate_predictor: multi family needs b or k");
        k = (n + *b - 1) / *b;
      }
      const double kd = static_cast<double>(*k);
      return (std::sqrt(kd) * ln_n + kd) / std::sqrt(ln_inv_beta);
    }
  }
  throw std::invalid_argument("unknown rate family");
}

}  // namespace lrmf
