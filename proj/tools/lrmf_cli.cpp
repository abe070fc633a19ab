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

// Batch front-end over the core library: build schedules and factorizations,
// evaluate errors and lower bounds, run the simulator, and sweep parameter
// grids into CSV/JSON for plotting. Exit codes: 0 success, 1 failed verify
// checks, 2 invalid flags, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrmf/bounds.hpp"
#include "lrmf/closed_forms.hpp"
#include "lrmf/factorizations.hpp"
#include "lrmf/metrics.hpp"
#include "lrmf/noise_engine.hpp"
#include "lrmf/schedules.hpp"
#include "lrmf/tri_matrix.hpp"
#include "lrmf/workload.hpp"

namespace {

using namespace lrmf;

constexpr const char* kCsvHeader =
    "n,beta,gamma,schedule,strategy,schema_b,schema_k,bandwidth,metric,value,status";

struct Row {
  std::size_t n = 0;
  double beta = 1.0;
  std::optional<double> gamma;
  std::string schedule;
  std::string strategy;
  std::optional<std::size_t> schema_b;
  std::optional<std::size_t> schema_k;
  std::optional<std::size_t> bandwidth;
  std::string metric;
  double value = 0.0;
  std::string status = "ok";
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_line(const Row& r) {
  std::ostringstream os;
  os << r.n << ',' << fmt(r.beta) << ',' << (r.gamma ? fmt(*r.gamma) : "") << ','
     << r.schedule << ',' << r.strategy << ','
     << (r.schema_b ? std::to_string(*r.schema_b) : "") << ','
     << (r.schema_k ? std::to_string(*r.schema_k) : "") << ','
     << (r.bandwidth ? std::to_string(*r.bandwidth) : "") << ',' << r.metric << ','
     << fmt(r.value) << ',' << r.status;
  return os.str();
}

nlohmann::json json_row(const Row& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma ? nlohmann::json(*r.gamma) : nlohmann::json(nullptr);
  j["schedule"] = r.schedule;
  j["strategy"] = r.strategy;
  j["schema_b"] = r.schema_b ? nlohmann::json(*r.schema_b) : nlohmann::json(nullptr);
  j["schema_k"] = r.schema_k ? nlohmann::json(*r.schema_k) : nlohmann::json(nullptr);
  j["bandwidth"] =
      r.bandwidth ? nlohmann::json(*r.bandwidth) : nlohmann::json(nullptr);
  j["metric"] = r.metric;
  j["value"] = r.value;
  j["status"] = r.status;
  return j;
}

// Relative --out paths resolve under $LRMF_OUT_DIR when it is set.
std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LRMF_OUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void write_rows(std::vector<Row> rows, const std::string& out,
                const std::string& format, bool sorted = false) {
  std::ostringstream body;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    if (sorted) {
      std::sort(rows.begin(), rows.end(),
                [](const Row& a, const Row& b) { return csv_line(a) < csv_line(b); });
    }
    for (const auto& r : rows) arr.push_back(json_row(r));
    body << arr.dump(2) << '\n';
  } else {
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& r : rows) lines.push_back(csv_line(r));
    if (sorted) std::sort(lines.begin(), lines.end());
    body << kCsvHeader << '\n';
    for (const auto& l : lines) body << l << '\n';
  }
  if (out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(resolve_out(out));
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << body.str();
  }
}

// Common flag bundle for one (schedule, strategy, schema) selection.
struct Flags {
  std::string schedule = "constant";
  std::size_t n = 0;
  double beta = 1.0;
  double gamma = 1.0;
  bool has_gamma = false;
  std::string strategy;
  std::size_t bandwidth = 0;
  std::string base = "prefix";
  std::size_t b = 0;
  std::size_t k = 0;
  std::string sens = "heuristic";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

void add_schedule_flags(CLI::App* cmd, Flags& f, bool gamma_flag = true) {
  cmd->add_option("--schedule", f.schedule, "decay kind")
      ->check(CLI::IsMember({"constant", "exponential", "polynomial", "linear",
                             "cosine"}));
  cmd->add_option("--n", f.n, "number of steps")->required()->check(CLI::Range(2u, 1u << 20));
  cmd->add_option("--beta", f.beta, "final learning-rate fraction")
      ->check(CLI::Range(1e-300, 1.0));
  if (gamma_flag) {
    cmd->add_option("--gamma", f.gamma, "polynomial exponent")
        ->check(CLI::Range(1.0, 1e6))
        ->each([&f](const std::string&) { f.has_gamma = true; });
  }
}

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "output path (stdout when omitted)");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

Schedule make_from(const Flags& f) {
  const auto kind = schedule_kind_from_string(f.schedule);
  const auto gamma = f.has_gamma ? std::optional<double>(f.gamma) : std::nullopt;
  return make_schedule(kind, f.n, f.beta, gamma);
}

Factorization build(const Workload& w, const Flags& f) {
  const auto strat = strategy_from_string(f.strategy);
  if (strat == Strategy::kBisr) {
    if (f.bandwidth == 0) {
      throw CLI::ValidationError("--bandwidth", "required for strategy bisr");
    }
    return bisr(w, f.bandwidth, bisr_base_from_string(f.base));
  }
  return factorize(w, strat);
}

std::optional<ParticipationSchema> schema_from(const Flags& f) {
  if (f.b == 0) return std::nullopt;
  auto schema = ParticipationSchema::MinSep(f.n, f.b);
  if (f.k != 0 && f.k != schema.k) {
    throw CLI::ValidationError("--k", "inconsistent with ceil(n/b) = " +
                                          std::to_string(schema.k));
  }
  return schema;
}

Row base_row(const Flags& f) {
  Row r;
  r.n = f.n;
  r.beta = f.schedule == "constant" ? 1.0 : f.beta;
  if (f.has_gamma) r.gamma = f.gamma;
  r.schedule = f.schedule;
  if (f.b != 0) {
    r.schema_b = f.b;
    r.schema_k = ParticipationSchema::MinSep(f.n, f.b).k;
  }
  return r;
}

int cmd_schedule(const Flags& f) {
  const auto s = make_from(f);
  if (f.format == "json" && !f.out.empty()) {
    std::ofstream file(resolve_out(f.out));
    file << schedule_to_json(s) << '\n';
    return 0;
  }
  std::vector<Row> rows;
  for (std::size_t k = 1; k <= s.n; ++k) {
    Row r = base_row(f);
    r.metric = "chi_" + std::to_string(k);
    r.value = s.values[k - 1];
    rows.push_back(r);
  }
  const auto reg = check_regularity(s, 10.0);
  Row a = base_row(f);
  a.metric = "max_scaled_delta";
  a.value = reg.max_scaled_delta;
  rows.push_back(a);
  a.metric = "sum_sq_delta";
  a.value = reg.sum_sq_delta;
  rows.push_back(a);
  write_rows(rows, f.out, f.format);
  return 0;
}

int cmd_factorize(const Flags& f) {
  const auto w = build_workload(make_from(f));
  const auto fact = build(w, f);
  if (!f.out.empty()) save_factorization(resolve_out(f.out), fact);
  Row r = base_row(f);
  r.strategy = f.strategy;
  r.bandwidth = fact.bandwidth;
  r.metric = "residual";
  r.value = fact.residual;
  write_rows({r}, "", f.format);
  return 0;
}

int cmd_errors(const Flags& f) {
  const auto w = build_workload(make_from(f));
  const auto fact = build(w, f);
  const auto schema = schema_from(f);
  const auto mode = f.sens == "exact" ? SensMode::kExact : SensMode::kHeuristic;
  const auto rep = evaluate(fact, schema, mode);

  std::vector<Row> rows;
  Row r = base_row(f);
  r.strategy = f.strategy;
  r.bandwidth = fact.bandwidth;
  r.metric = "sensitivity";
  r.value = rep.sensitivity;
  rows.push_back(r);
  r.metric = "maxse";
  r.value = rep.maxse;
  rows.push_back(r);
  r.metric = "meanse";
  r.value = rep.meanse;
  rows.push_back(r);
  if (schema && rep.multi) {
    r.metric = "multi_error";
    r.value = *rep.multi;
    rows.push_back(r);
  }
  write_rows(rows, f.out, f.format);
  return 0;
}

int cmd_bounds(const Flags& f) {
  const auto s = make_from(f);
  const auto report = lb_single(s);
  std::vector<Row> rows;
  Row r = base_row(f);
  r.strategy = "lower_bound";
  r.metric = "lb_maxse";
  r.value = report.lb_maxse;
  rows.push_back(r);
  r.metric = "lb_meanse";
  r.value = report.lb_meanse;
  rows.push_back(r);
  if (const auto schema = schema_from(f)) {
    r.metric = "lb_multi";
    r.value = lb_multi(s, *schema);
    rows.push_back(r);
  }
  write_rows(rows, f.out, f.format);
  return 0;
}

int cmd_simulate(const Flags& f, const std::string& objective, double eta,
                 double zeta, std::size_t batch, double sigma, std::size_t d) {
  const auto w = build_workload(make_from(f));
  const auto fact = build(w, f);
  SimConfig cfg;
  if (objective == "regression") {
    cfg.objective = LinearRegressionObjective{f.seed + 1, 8 * batch, d};
  } else {
    cfg.objective = QuadraticObjective{std::vector<double>(d, 1.0),
                                       std::vector<double>(d, 1.0)};
  }
  cfg.eta = eta;
  cfg.zeta = zeta;
  cfg.batch = batch;
  cfg.sigma_eps_delta = sigma;
  cfg.noise_seed = f.seed;
  cfg.d = d;
  const auto t = dp_sgd_run(cfg, fact);
  write_trajectory_csv(resolve_out(f.out), t);
  return 0;
}

struct SweepLists {
  std::vector<std::size_t> n_list;
  std::vector<double> beta_list;
  std::vector<std::string> schedules;
  std::vector<std::string> strategies;
};

int cmd_sweep(const Flags& f, const SweepLists& lists) {
  std::vector<Row> rows;
  for (std::size_t n : lists.n_list) {
    for (double beta : lists.beta_list) {
      for (const auto& sched : lists.schedules) {
        Flags point = f;
        point.n = n;
        point.beta = beta;
        point.schedule = sched;
        if (sched == "polynomial" && !point.has_gamma) {
          point.has_gamma = true;
          point.gamma = 1.0;
        } else if (sched != "polynomial") {
          point.has_gamma = false;
        }
        Schedule s;
        try {
          s = make_from(point);
        } catch (const std::exception&) {
          Row r = base_row(point);
          r.metric = "schedule";
          r.value = std::nan("");
          r.status = "error";
          rows.push_back(r);
          continue;
        }
        const auto w = build_workload(s);
        const auto schema = schema_from(point);
        const auto mode =
            point.sens == "exact" ? SensMode::kExact : SensMode::kHeuristic;

        const auto br = lb_single(s);
        Row lb = base_row(point);
        lb.strategy = "lower_bound";
        lb.metric = "lb_maxse";
        lb.value = br.lb_maxse;
        rows.push_back(lb);
        lb.metric = "lb_meanse";
        lb.value = br.lb_meanse;
        rows.push_back(lb);
        if (schema) {
          lb.metric = "lb_multi";
          lb.value = lb_multi(s, *schema);
          rows.push_back(lb);
        }

        for (const auto& strat : lists.strategies) {
          Flags cell = point;
          cell.strategy = strat;
          Row r = base_row(cell);
          r.strategy = strat;
          if (strat == "bisr") r.bandwidth = cell.bandwidth;
          try {
            const auto fact = build(w, cell);
            const auto rep = evaluate(fact, schema, mode);
            r.metric = "sensitivity";
            r.value = rep.sensitivity;
            rows.push_back(r);
            r.metric = "maxse";
            r.value = rep.maxse;
            rows.push_back(r);
            r.metric = "meanse";
            r.value = rep.meanse;
            rows.push_back(r);
            if (schema && rep.multi) {
              r.metric = "multi_error";
              r.value = *rep.multi;
              rows.push_back(r);
            }
          } catch (const std::exception&) {
            r.metric = "error";
            r.value = std::nan("");
            r.status = "error";
            rows.push_back(r);
          }
        }
      }
    }
  }
  write_rows(std::move(rows), f.out, f.format, /*sorted=*/true);
  return 0;
}

int cmd_verify() {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  {
    const auto p = exp_decay_params(256, 0.1);
    const auto sq = toeplitz_multiply(c_alpha(p), c_alpha(p));
    const auto chi = make_schedule(ScheduleKind::kExponential, 256, 0.1).values;
    double dev = 0.0;
    for (std::size_t j = 0; j < 256; ++j)
      dev = std::max(dev, std::abs(sq.coeffs()[j] - chi[j]));
    check("lr_aware_coefficients_square_to_workload", dev < 1e-9);
  }
  {
    const auto p = exp_decay_params(128, 0.5);
    const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 128, 0.5));
    const auto s = exp_workload_sqrt(p).materialize();
    const auto inv = exp_workload_inv_sqrt(p).materialize();
    check("workload_sqrt_squares_back",
          max_abs_diff(lt_multiply(s, s), w.a_chi) < 1e-9);
    check("workload_sqrt_inverse_identity",
          max_abs_diff(lt_multiply(s, inv), LowerTriangular::Identity(128)) < 1e-9);
  }
  {
    const auto r = prefix_sqrt_coeffs(128);
    const auto rt = prefix_inv_sqrt_coeffs(128);
    double dev = 0.0;
    for (std::size_t k = 0; k < 128; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k; ++j) acc += r[j] * rt[k - j];
      dev = std::max(dev, std::abs(acc - (k == 0 ? 1.0 : 0.0)));
    }
    check("prefix_root_coefficients_invert", dev < 1e-12);
  }
  {
    bool ok = true;
    const Strategy all[] = {Strategy::kPrefixScaled, Strategy::kIdentityRight,
                            Strategy::kIdentityLeft, Strategy::kSquareRoot,
                            Strategy::kLrAware, Strategy::kPrefixSqrt};
    const ScheduleKind kinds[] = {ScheduleKind::kExponential, ScheduleKind::kPolynomial,
                                  ScheduleKind::kLinear, ScheduleKind::kCosine};
    for (auto kind : kinds) {
      const auto gamma = kind == ScheduleKind::kPolynomial
                             ? std::optional<double>(2.0)
                             : std::nullopt;
      const auto w = build_workload(make_schedule(kind, 64, 0.1, gamma));
      for (auto strat : all) ok = ok && factorize(w, strat).residual <= 1e-9 * 64;
    }
    check("all_factorizations_reconstruct_workload", ok);
  }
  {
    const auto w = build_workload(make_schedule(ScheduleKind::kLinear, 64, 0.3));
    const auto f = factorize(w, Strategy::kIdentityLeft);
    check("identity_left_error_is_sqrt_n",
          std::abs(max_se(f) - 8.0) < 1e-10 && std::abs(mean_se(f) - 8.0) < 1e-10);
  }
  {
    const auto sens = sensitivity_multi(LowerTriangular::Ones(4),
                                        ParticipationSchema::MinSep(4, 2),
                                        SensMode::kExact);
    check("multi_sensitivity_brute_force_example",
          std::abs(sens - std::sqrt(10.0)) < 1e-12);
  }
  {
    const auto w = build_workload(make_schedule(ScheduleKind::kExponential, 64, 0.1));
    const auto f = bisr(w, 4, BisrBase::kPrefixWorkload);
    auto banded = NoiseStream::Banded(*f.c_inverse_band, 4, 8, 1.0, 7);
    auto dense = NoiseStream::Dense(lt_inverse(f.c), 8, 1.0, 7);
    double dev = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
      const auto a = banded.next();
      const auto b = dense.next();
      for (std::size_t c = 0; c < 8; ++c) dev = std::max(dev, std::abs(a[c] - b[c]));
    }
    check("streaming_noise_matches_dense", dev < 1e-8);
  }
  {
    bool ok = true;
    for (double beta : {0.05, 0.4}) {
      const auto s = make_schedule(ScheduleKind::kCosine, 64, beta);
      const auto w = build_workload(s);
      const auto r = lb_single(s);
      for (auto strat : {Strategy::kSquareRoot, Strategy::kLrAware}) {
        const auto f = factorize(w, strat);
        ok = ok && max_se(f) >= r.lb_maxse - 1e-12 &&
             mean_se(f) >= r.lb_meanse - 1e-12;
      }
    }
    check("lower_bounds_dominated_by_measured_errors", ok);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error metrics and noise generation for matrix-factorized private SGD"};
  app.require_subcommand(1);

  Flags f;
  std::string objective = "quadratic";
  double eta = 0.1, zeta = 1.0, sigma = 1.0;
  std::size_t batch = 1, dim = 4;
  SweepLists lists;

  auto* schedule = app.add_subcommand("schedule", "emit a decay schedule");
  add_schedule_flags(schedule, f);
  add_output_flags(schedule, f);

  auto* factorize_cmd =
      app.add_subcommand("factorize", "build and save a factorization");
  add_schedule_flags(factorize_cmd, f);
  factorize_cmd->add_option("--strategy", f.strategy)->required();
  factorize_cmd->add_option("--bandwidth", f.bandwidth)->check(CLI::PositiveNumber);
  factorize_cmd->add_option("--base", f.base)->check(CLI::IsMember({"prefix", "lr"}));
  factorize_cmd->add_option("--out", f.out, "directory to save into");
  factorize_cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));

  auto* errors = app.add_subcommand("errors", "evaluate error metrics");
  add_schedule_flags(errors, f);
  errors->add_option("--strategy", f.strategy)->required();
  errors->add_option("--bandwidth", f.bandwidth)->check(CLI::PositiveNumber);
  errors->add_option("--base", f.base)->check(CLI::IsMember({"prefix", "lr"}));
  errors->add_option("--b", f.b)->check(CLI::PositiveNumber);
  errors->add_option("--k", f.k);
  errors->add_option("--sens", f.sens)->check(CLI::IsMember({"exact", "heuristic"}));
  add_output_flags(errors, f);

  auto* bounds = app.add_subcommand("bounds", "evaluate lower bounds");
  add_schedule_flags(bounds, f);
  bounds->add_option("--b", f.b)->check(CLI::PositiveNumber);
  bounds->add_option("--k", f.k);
  add_output_flags(bounds, f);

  auto* simulate = app.add_subcommand("simulate", "run the private SGD simulator");
  add_schedule_flags(simulate, f);
  simulate->add_option("--strategy", f.strategy)->required();
  simulate->add_option("--bandwidth", f.bandwidth)->check(CLI::PositiveNumber);
  simulate->add_option("--base", f.base)->check(CLI::IsMember({"prefix", "lr"}));
  simulate->add_option("--objective", objective)
      ->check(CLI::IsMember({"quadratic", "regression"}));
  simulate->add_option("--eta", eta)->check(CLI::PositiveNumber);
  simulate->add_option("--zeta", zeta)->check(CLI::PositiveNumber);
  simulate->add_option("--batch", batch)->check(CLI::PositiveNumber);
  simulate->add_option("--sigma", sigma)->check(CLI::NonNegativeNumber);
  simulate->add_option("--d", dim)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed);
  simulate->add_option("--out", f.out, "trajectory CSV path")->required();

  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
  sweep->add_option("--n", lists.n_list)->required();
  sweep->add_option("--beta", lists.beta_list)->required();
  sweep->add_option("--schedule", lists.schedules)
      ->required()
      ->check(CLI::IsMember({"constant", "exponential", "polynomial", "linear",
                             "cosine"}));
  sweep->add_option("--strategy", lists.strategies)->required();
  sweep->add_option("--gamma", f.gamma)
      ->check(CLI::Range(1.0, 1e6))
      ->each([&f](const std::string&) { f.has_gamma = true; });
  sweep->add_option("--bandwidth", f.bandwidth)->check(CLI::PositiveNumber);
  sweep->add_option("--base", f.base)->check(CLI::IsMember({"prefix", "lr"}));
  sweep->add_option("--b", f.b)->check(CLI::PositiveNumber);
  sweep->add_option("--k", f.k);
  sweep->add_option("--sens", f.sens)->check(CLI::IsMember({"exact", "heuristic"}));
  add_output_flags(sweep, f);

  auto* verify = app.add_subcommand("verify", "run the built-in identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (schedule->parsed()) return cmd_schedule(f);
    if (factorize_cmd->parsed()) return cmd_factorize(f);
    if (errors->parsed()) return cmd_errors(f);
    if (bounds->parsed()) return cmd_bounds(f);
    if (simulate->parsed())
      return cmd_simulate(f, objective, eta, zeta, batch, sigma, dim);
    if (sweep->parsed()) {
      // sweep's --b is interpreted per n inside the loop; validate lazily.
      return cmd_sweep(f, lists);
    }
    if (verify->parsed()) return cmd_verify();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
