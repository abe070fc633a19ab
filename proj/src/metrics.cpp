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

#include "lrmf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lrmf {

ParticipationSchema ParticipationSchema::MinSep(std::size_t n, std::size_t b) {
  if (b < 1 || n < 1) throw std::invalid_argument("MinSep: require n >= 1, b >= 1");
  ParticipationSchema s;
  s.mode = Mode::kMinSep;
  s.b = b;
  s.k = (n + b - 1) / b;
  return s;
}

double sensitivity_single(const LowerTriangular& c) {
  const auto norms = col_norms(c);
  return *std::max_element(norms.begin(), norms.end());
}

namespace {

void require_nonnegative(const LowerTriangular& c) {
  for (double v : c.packed()) {
    if (v < 0.0) {
      throw std::invalid_argument(
          "sensitivity_multi: C must have nonnegative entries");
    }
  }
}

// Columns of C as dense vectors for fast accumulation.
std::vector<std::vector<double>> dense_columns(const LowerTriangular& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) cols[j][i] = c(i, j);
  }
  return cols;
}

double norm2(const std::vector<double>& v) {
  long double acc = 0.0L;
  for (double x : v) acc += (long double)x * x;
  return std::sqrt((double)acc);
}

// Depth-first walk over b-min-separated patterns, tracking the running
// column sum. Every nonempty prefix is itself a valid pattern.
void enumerate_patterns(const std::vector<std::vector<double>>& cols,
                        std::size_t next, std::size_t b,
                        std::vector<double>& sum, double& best) {
  const std::size_t n = cols.size();
  for (std::size_t i = next; i < n; ++i) {
    for (std::size_t t = 0; t < n; ++t) sum[t] += cols[i][t];
    best = std::max(best, norm2(sum));
    if (i + b < n) enumerate_patterns(cols, i + b, b, sum, best);
    for (std::size_t t = 0; t < n; ++t) sum[t] -= cols[i][t];
  }
}

double sensitivity_minsep_exact(const LowerTriangular& c, std::size_t b) {
  if (c.size() > 24) {
    throw std::invalid_argument("sensitivity_multi: exact mode capped at n <= 24");
  }
  const auto cols = dense_columns(c);
  std::vector<double> sum(c.size(), 0.0);
  double best = 0.0;
  enumerate_patterns(cols, 0, b, sum, best);
  return best;
}

double sensitivity_minsep_heuristic(const LowerTriangular& c, std::size_t b) {
  const std::size_t n = c.size();
  const auto single = col_norms(c);
  double best = *std::max_element(single.begin(), single.end());
  std::vector<double> sum(n);
  for (std::size_t s = 0; s < std::min(b, n); ++s) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t i = s; i < n; i += b) {
      for (std::size_t t = i; t < n; ++t) sum[t] += c(t, i);
      best = std::max(best, norm2(sum));
    }
  }
  return best;
}

}  // namespace

double sensitivity_multi(const LowerTriangular& c, const ParticipationSchema& schema,
                         SensMode mode) {
  if (schema.mode == ParticipationSchema::Mode::kSingle) {
    return sensitivity_single(c);
  }
  require_nonnegative(c);
  return mode == SensMode::kExact ? sensitivity_minsep_exact(c, schema.b)
                                  : sensitivity_minsep_heuristic(c, schema.b);
}

double sens_lower_frobenius(const LowerTriangular& c, std::size_t b) {
  if (b < 1) throw std::invalid_argument("sens_lower_frobenius: b must be >= 1");
  return frobenius(c) / std::sqrt(2.0 * static_cast<double>(b));
}

double max_se(const Factorization& f) {
  const auto rows = row_norms(f.b);
  return *std::max_element(rows.begin(), rows.end()) * sensitivity_single(f.c);
}

double mean_se(const Factorization& f) {
  const double n = static_cast<double>(f.b.size());
  return frobenius(f.b) / std::sqrt(n) * sensitivity_single(f.c);
}

double multi_error(const LowerTriangular& b, const LowerTriangular& c,
                   const ParticipationSchema& schema, SensMode mode) {
  const double n = static_cast<double>(b.size());
  return frobenius(b) / std::sqrt(n) * sensitivity_multi(c, schema, mode);
}

ErrorReport evaluate(const Factorization& f,
                     const std::optional<ParticipationSchema>& schema,
                     SensMode mode) {
  ErrorReport r;
  r.sensitivity = sensitivity_single(f.c);
  r.maxse = max_se(f);
  r.meanse = mean_se(f);
  if (schema && schema->mode == ParticipationSchema::Mode::kMinSep) {
    r.multi = multi_error(f.b, f.c, *schema, mode);
  } else {
    r.multi.reset();
  }
  r.strategy = to_string(f.strategy);
  r.schedule = to_string(f.workload.schedule.kind);
  r.n = f.workload.schedule.n;
  r.beta = f.workload.schedule.beta;
  return r;
}

ErrorReport dp_scale(ErrorReport report, double sigma_eps_delta, double zeta) {
  if (!(sigma_eps_delta > 0.0) || !(zeta > 0.0)) {
    throw std::invalid_argument("dp_scale: scale factors must be positive");
  }
  const double s = sigma_eps_delta * zeta;
  report.maxse *= s;
  report.meanse *= s;
  if (report.multi) *report.multi *= s;
  return report;
}

}  // namespace lrmf
