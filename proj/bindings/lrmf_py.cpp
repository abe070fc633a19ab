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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lrmf/bounds.hpp"
#include "lrmf/closed_forms.hpp"
#include "lrmf/factorizations.hpp"
#include "lrmf/metrics.hpp"
#include "lrmf/noise_engine.hpp"
#include "lrmf/schedules.hpp"
#include "lrmf/workload.hpp"

namespace py = pybind11;
using namespace lrmf;

namespace {

Schedule schedule_of(const std::string& kind, std::size_t n, double beta,
                     std::optional<double> gamma) {
  return make_schedule(schedule_kind_from_string(kind), n, beta, gamma);
}

std::vector<std::vector<double>> dense(const LowerTriangular& m) {
  std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size(), 0.0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out[i][j] = m(i, j);
  return out;
}

ParticipationSchema schema_of(std::size_t n, std::optional<std::size_t> b) {
  return b ? ParticipationSchema::MinSep(n, *b) : ParticipationSchema::Single();
}

SensMode mode_of(const std::string& mode) {
  if (mode == "exact") return SensMode::kExact;
  if (mode == "heuristic") return SensMode::kHeuristic;
  throw std::invalid_argument("unknown sensitivity mode: " + mode);
}

}  // namespace

PYBIND11_MODULE(_lrmf, m) {
  m.doc() = "Error metrics and correlated noise for matrix-factorized private SGD";

  m.def(
      "schedule",
      [](const std::string& kind, std::size_t n, double beta,
         std::optional<double> gamma) {
        return schedule_of(kind, n, beta, gamma).values;
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("gamma") = py::none(),
      "Learning-rate decay sequence chi_1..chi_n.");

  m.def(
      "regularity",
      [](const std::string& kind, std::size_t n, double beta,
         std::optional<double> gamma, double c) {
        const auto r = check_regularity(schedule_of(kind, n, beta, gamma), c);
        py::dict d;
        d["max_scaled_delta"] = r.max_scaled_delta;
        d["sum_sq_delta"] = r.sum_sq_delta;
        d["aggregate_threshold"] = r.aggregate_threshold;
        d["passes_pointwise"] = r.passes_pointwise;
        d["passes_aggregate"] = r.passes_aggregate;
        return d;
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("gamma") = py::none(),
      py::arg("c") = 10.0);

  py::class_<Factorization>(m, "Factorization")
      .def_property_readonly("strategy",
                             [](const Factorization& f) { return to_string(f.strategy); })
      .def_property_readonly("n",
                             [](const Factorization& f) { return f.b.size(); })
      .def_property_readonly("residual",
                             [](const Factorization& f) { return f.residual; })
      .def_property_readonly("bandwidth",
                             [](const Factorization& f) { return f.bandwidth; })
      .def("b", [](const Factorization& f) { return dense(f.b); })
      .def("c", [](const Factorization& f) { return dense(f.c); })
      .def("sensitivity",
           [](const Factorization& f) { return sensitivity_single(f.c); })
      .def("max_se", [](const Factorization& f) { return max_se(f); })
      .def("mean_se", [](const Factorization& f) { return mean_se(f); })
      .def(
          "multi_error",
          [](const Factorization& f, std::size_t b, const std::string& mode) {
            return multi_error(f.b, f.c, ParticipationSchema::MinSep(f.b.size(), b),
                               mode_of(mode));
          },
          py::arg("b"), py::arg("mode") = "heuristic");

  m.def(
      "factorize",
      [](const std::string& kind, std::size_t n, double beta,
         const std::string& strategy, std::optional<double> gamma,
         std::optional<std::size_t> bandwidth, const std::string& base) {
        const auto w = build_workload(schedule_of(kind, n, beta, gamma));
        const auto strat = strategy_from_string(strategy);
        if (strat == Strategy::kBisr) {
          if (!bandwidth) throw std::invalid_argument("bisr requires a bandwidth");
          return bisr(w, *bandwidth, bisr_base_from_string(base));
        }
        return factorize(w, strat);
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("strategy"),
      py::arg("gamma") = py::none(), py::arg("bandwidth") = py::none(),
      py::arg("base") = "prefix");

  m.def(
      "evaluate",
      [](const std::string& kind, std::size_t n, double beta,
         const std::string& strategy, std::optional<double> gamma,
         std::optional<std::size_t> b, const std::string& mode) {
        const auto w = build_workload(schedule_of(kind, n, beta, gamma));
        const auto f = factorize(w, strategy_from_string(strategy));
        const auto schema = b ? std::optional<ParticipationSchema>(
                                    ParticipationSchema::MinSep(n, *b))
                              : std::nullopt;
        const auto r = evaluate(f, schema, mode_of(mode));
        py::dict d;
        d["sensitivity"] = r.sensitivity;
        d["maxse"] = r.maxse;
        d["meanse"] = r.meanse;
        if (r.multi) d["multi_error"] = *r.multi;
        d["strategy"] = r.strategy;
        d["schedule"] = r.schedule;
        return d;
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("strategy"),
      py::arg("gamma") = py::none(), py::arg("b") = py::none(),
      py::arg("mode") = "heuristic");

  m.def(
      "lower_bounds",
      [](const std::string& kind, std::size_t n, double beta,
         std::optional<double> gamma, std::optional<std::size_t> b) {
        const auto s = schedule_of(kind, n, beta, gamma);
        const auto r = lb_single(s);
        py::dict d;
        d["lb_maxse"] = r.lb_maxse;
        d["lb_meanse"] = r.lb_meanse;
        d["argmax_maxse"] = r.argmax_maxse;
        d["argmax_meanse"] = r.argmax_meanse;
        if (b) d["lb_multi"] = lb_multi(s, ParticipationSchema::MinSep(n, *b));
        return d;
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("gamma") = py::none(),
      py::arg("b") = py::none());

  m.def(
      "rate_predictor",
      [](const std::string& family, std::size_t n, double beta,
         std::optional<std::size_t> b, std::optional<std::size_t> k) {
        return rate_predictor(rate_family_from_string(family), n, beta, b, k);
      },
      py::arg("family"), py::arg("n"), py::arg("beta"), py::arg("b") = py::none(),
      py::arg("k") = py::none());

  m.def(
      "sensitivity_multi",
      [](const std::vector<std::vector<double>>& c, std::size_t b,
         const std::string& mode) {
        const std::size_t n = c.size();
        LowerTriangular m2(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j <= i; ++j) m2.at(i, j) = c[i][j];
        return sensitivity_multi(m2, schema_of(n, b), mode_of(mode));
      },
      py::arg("c"), py::arg("b"), py::arg("mode") = "heuristic");

  m.def(
      "simulate_quadratic",
      [](const std::string& kind, std::size_t n, double beta,
         const std::string& strategy, double eta, double zeta, double sigma,
         std::size_t d, std::uint64_t seed, std::optional<double> gamma) {
        const auto w = build_workload(schedule_of(kind, n, beta, gamma));
        const auto f = factorize(w, strategy_from_string(strategy));
        SimConfig cfg;
        cfg.objective = QuadraticObjective{std::vector<double>(d, 1.0),
                                           std::vector<double>(d, 1.0)};
        cfg.eta = eta;
        cfg.zeta = zeta;
        cfg.batch = 1;
        cfg.sigma_eps_delta = sigma;
        cfg.noise_seed = seed;
        cfg.d = d;
        const auto t = dp_sgd_run(cfg, f);
        py::dict out;
        out["losses"] = t.losses;
        out["noise_norms"] = t.noise_norms;
        out["theta_final"] = t.theta.back();
        return out;
      },
      py::arg("kind"), py::arg("n"), py::arg("beta"), py::arg("strategy"),
      py::arg("eta") = 0.1, py::arg("zeta") = 1.0, py::arg("sigma") = 0.0,
      py::arg("d") = 2, py::arg("seed") = 0, py::arg("gamma") = py::none());
}
