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

#ifndef LRMF_SCHEDULES_HPP_
#define LRMF_SCHEDULES_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lrmf {

enum class ScheduleKind { kConstant, kExponential, kPolynomial, kLinear, kCosine };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

// A learning-rate sequence chi_1..chi_n, nonincreasing on [beta, 1] with
// chi_1 = 1 and chi_n = beta (chi = 1 throughout for the constant kind).
// All formulas are stated 1-based; storage is 0-based, so values[k-1] is
// chi_k.
struct Schedule {
  ScheduleKind kind = ScheduleKind::kConstant;
  std::size_t n = 0;
  double beta = 1.0;
  std::optional<double> gamma;  // polynomial exponent, >= 1
  std::vector<double> values;
};

// Builds the decay sequence for the given kind. Requires n >= 2 and
// beta in (0, 1]; gamma must be supplied exactly for the polynomial kind.
// beta = 1 degenerates every kind to the all-ones sequence.
Schedule make_schedule(ScheduleKind kind, std::size_t n, double beta,
                       std::optional<double> gamma = std::nullopt);

// Diagnostics for the regularity conditions on a schedule: the pointwise
// condition delta_t <= c / (t (1 + ln t)) on the step differences
// delta_t = |chi_t - chi_{t+1}|, and the aggregate proxy
// sum_t delta_t^2 <= c ln(n) / n. The aggregate condition is asymptotic in
// nature; the finite-n threshold here is a diagnostic proxy only.
struct RegularityReport {
  double max_scaled_delta = 0.0;  // max_t delta_t * t * (1 + ln t)
  double sum_sq_delta = 0.0;
  double aggregate_threshold = 0.0;  // c ln(n) / n
  bool passes_pointwise = false;
  bool passes_aggregate = false;
};

RegularityReport check_regularity(const Schedule& s, double c);

std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);

}  // namespace lrmf

#endif  // LRMF_SCHEDULES_HPP_
