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

#include "lrmf/schedules.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lrmf {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstant: return "constant";
    case ScheduleKind::kExponential: return "exponential";
    case ScheduleKind::kPolynomial: return "polynomial";
    case ScheduleKind::kLinear: return "linear";
    case ScheduleKind::kCosine: return "cosine";
  }
  throw std::invalid_argument("unknown schedule kind");
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "constant") return ScheduleKind::kConstant;
  if (name == "exponential") return ScheduleKind::kExponential;
  if (name == "polynomial") return ScheduleKind::kPolynomial;
  if (name == "linear") return ScheduleKind::kLinear;
  if (name == "cosine") return ScheduleKind::kCosine;
  throw std::invalid_argument("unknown schedule kind: " + name);
}

Schedule make_schedule(ScheduleKind kind, std::size_t n, double beta,
                       std::optional<double> gamma) {
  if (n < 2) throw std::invalid_argument("make_schedule: n must be >= 2");
  if (!(beta > 0.0) || beta > 1.0) {
    throw std::invalid_argument("make_schedule: beta must lie in (0, 1]");
  }
  if (kind == ScheduleKind::kPolynomial) {
    if (!gamma) throw std::invalid_argument("make_schedule: polynomial kind requires gamma");
    if (!(*gamma >= 1.0)) throw std::invalid_argument("make_schedule: gamma must be >= 1");
  } else if (gamma) {
    throw std::invalid_argument("make_schedule: gamma only applies to the polynomial kind");
  }

  Schedule s;
  s.kind = kind;
  s.n = n;
  s.beta = kind == ScheduleKind::kConstant ? 1.0 : beta;
  s.gamma = gamma;
  s.values.resize(n);

  const double nd = static_cast<double>(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double k = static_cast<double>(idx + 1);  // 1-based step
    double v;
    if (kind == ScheduleKind::kConstant || beta == 1.0) {
      v = 1.0;
    } else {
      switch (kind) {
        case ScheduleKind::kExponential:
          v = std::pow(beta, (k - 1.0) / (nd - 1.0));
          break;
        case ScheduleKind::kPolynomial:
          v = beta + (1.0 - beta) * (std::pow(nd / k, *gamma) - 1.0) /
                         (std::pow(nd, *gamma) - 1.0);
          break;
        case ScheduleKind::kLinear:
          v = 1.0 - (k - 1.0) / (nd - 1.0) * (1.0 - beta);
          break;
        case ScheduleKind::kCosine:
          v = beta + 0.5 * (1.0 - beta) *
                         (1.0 + std::cos((k - 1.0) / (nd - 1.0) * std::numbers::pi));
          break;
        default:
          v = 1.0;
      }
    }
    s.values[idx] = v;
  }
  // Pin the endpoints: every decay formula gives exactly 1 and beta there,
  // and downstream invariants compare against them at 1e-12.
  s.values.front() = 1.0;
  if (kind != ScheduleKind::kConstant && beta < 1.0) s.values.back() = beta;
  return s;
}

RegularityReport check_regularity(const Schedule& s, double c) {
  if (s.n < 2) throw std::invalid_argument("check_regularity: n must be >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("check_regularity: c must be positive");
  RegularityReport r;
  for (std::size_t idx = 0; idx + 1 < s.n; ++idx) {
    const double t = static_cast<double>(idx + 1);
    const double delta = std::abs(s.values[idx] - s.values[idx + 1]);
    r.max_scaled_delta = std::max(r.max_scaled_delta, delta * t * (1.0 + std::log(t)));
    r.sum_sq_delta += delta * delta;
  }
  r.aggregate_threshold = c * std::log(static_cast<double>(s.n)) / static_cast<double>(s.n);
  r.passes_pointwise = r.max_scaled_delta <= c;
  r.passes_aggregate = r.sum_sq_delta <= r.aggregate_threshold;
  return r;
}

std::string schedule_to_json(const Schedule& s) {
  nlohmann::json j{{"kind", to_string(s.kind)},
                   {"n", s.n},
                   {"beta", s.beta},
                   {"values", s.values}};
  if (s.gamma) j["gamma"] = *s.gamma;
  return j.dump(2);
}

Schedule schedule_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Schedule s;
  s.kind = schedule_kind_from_string(j.at("kind").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.beta = j.at("beta").get<double>();
  if (j.contains("gamma")) s.gamma = j["gamma"].get<double>();
  s.values = j.at("values").get<std::vector<double>>();
  if (s.values.size() != s.n) {
    throw std::invalid_argument("schedule_from_json: values length differs from n");
  }
  return s;
}

}  // namespace lrmf
