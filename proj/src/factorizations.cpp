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

#include "lrmf/factorizations.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lrmf/closed_forms.hpp"

namespace lrmf {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kPrefixScaled: return "prefix_scaled";
    case Strategy::kIdentityRight: return "identity_right";
    case Strategy::kIdentityLeft: return "identity_left";
    case Strategy::kSquareRoot: return "square_root";
    case Strategy::kLrAware: return "lr_aware";
    case Strategy::kPrefixSqrt: return "prefix_sqrt";
    case Strategy::kBisr: return "bisr";
  }
  throw std::invalid_argument("unknown strategy");
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "prefix_scaled") return Strategy::kPrefixScaled;
  if (name == "identity_right") return Strategy::kIdentityRight;
  if (name == "identity_left") return Strategy::kIdentityLeft;
  if (name == "square_root") return Strategy::kSquareRoot;
  if (name == "lr_aware") return Strategy::kLrAware;
  if (name == "prefix_sqrt") return Strategy::kPrefixSqrt;
  if (name == "bisr") return Strategy::kBisr;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string to_string(BisrBase b) {
  return b == BisrBase::kPrefixWorkload ? "prefix" : "lr";
}

BisrBase bisr_base_from_string(const std::string& name) {
  if (name == "prefix") return BisrBase::kPrefixWorkload;
  if (name == "lr") return BisrBase::kLrWorkload;
  throw std::invalid_argument("unknown bisr base: " + name);
}

namespace {

// A_chi times a Toeplitz operator given by its coefficients t:
// (A_chi T)_{m,l} = sum_{j=l}^{m} chi_j t_{j-l}, accumulated as a running
// sum per column, O(n^2) total.
LowerTriangular a_chi_times_toeplitz(const std::vector<double>& chi,
                                     const std::vector<double>& t) {
  const std::size_t n = chi.size();
  LowerTriangular b(n);
  std::vector<double> running(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    auto row = b.row(m);
    for (std::size_t l = 0; l <= m; ++l) {
      running[l] += chi[m] * t[m - l];
      row[l] = running[l];
    }
  }
  return b;
}

Factorization finish(Factorization f) {
  f.residual = max_abs_diff(lt_multiply(f.b, f.c), f.workload.a_chi);
  const double tol = 1e-9 * static_cast<double>(f.workload.schedule.n);
  if (f.residual > tol) {
    throw std::runtime_error("factorization residual " + std::to_string(f.residual) +
                             " exceeds tolerance");
  }
  return f;
}

}  // namespace

Factorization factorize(const Workload& w, Strategy strategy) {
  const std::size_t n = w.schedule.n;
  const auto& chi = w.schedule.values;
  Factorization f;
  f.strategy = strategy;
  f.workload = w;

  switch (strategy) {
    case Strategy::kIdentityRight:
      f.b = w.a_chi;
      f.c = LowerTriangular::Identity(n);
      break;
    case Strategy::kIdentityLeft:
      f.b = LowerTriangular::Identity(n);
      f.c = w.a_chi;
      break;
    case Strategy::kSquareRoot: {
      f.b = lt_sqrt(w.a_chi);
      f.c = f.b;
      break;
    }
    case Strategy::kPrefixScaled: {
      const ToeplitzLT root(prefix_sqrt_coeffs(n));
      f.b = root.materialize();
      // C = A_1^{1/2} D: column j of the Toeplitz root scaled by chi_j.
      f.c = LowerTriangular(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          f.c.at(i, j) = root.coeffs()[i - j] * chi[j];
        }
      }
      break;
    }
    case Strategy::kPrefixSqrt: {
      f.c = ToeplitzLT(prefix_sqrt_coeffs(n)).materialize();
      f.b = a_chi_times_toeplitz(chi, prefix_inv_sqrt_coeffs(n));
      break;
    }
    case Strategy::kLrAware: {
      // For the exponential schedule the Toeplitz square root has the
      // explicit coefficients alpha^j r_j; other kinds use the generic
      // series recursion on A_chi^Toep.
      ToeplitzLT c = w.schedule.kind == ScheduleKind::kExponential &&
                             w.schedule.beta < 1.0
                         ? c_alpha(exp_decay_params(n, w.schedule.beta))
                         : toeplitz_sqrt(w.a_toep);
      f.b = a_chi_times_toeplitz(chi, toeplitz_inverse(c).coeffs());
      f.c = c.materialize();
      break;
    }
    case Strategy::kBisr:
      throw std::invalid_argument("factorize: use bisr() for the banded strategy");
  }
  return finish(std::move(f));
}

Factorization bisr(const Workload& w, std::size_t p, BisrBase base) {
  const std::size_t n = w.schedule.n;
  if (p < 1 || p > n) throw std::invalid_argument("bisr: bandwidth out of range");

  Factorization f;
  f.strategy = Strategy::kBisr;
  f.workload = w;
  f.bandwidth = p;
  f.base = base;

  if (base == BisrBase::kPrefixWorkload) {
    const ToeplitzLT m = band(ToeplitzLT(prefix_inv_sqrt_coeffs(n)), p);
    f.c = toeplitz_inverse(m).materialize();
    f.b = a_chi_times_toeplitz(w.schedule.values, m.coeffs());
    f.c_inverse_band = m.materialize();
  } else {
    const LowerTriangular m = band(lt_inverse(lt_sqrt(w.a_chi)), p);
    f.c = lt_inverse(m);
    f.b = lt_multiply(w.a_chi, m);
    f.c_inverse_band = m;
  }
  return finish(std::move(f));
}

void save_factorization(const std::filesystem::path& dir, const Factorization& f) {
  std::filesystem::create_directories(dir);
  write_ltm(dir / "b.ltm", f.b);
  write_ltm(dir / "c.ltm", f.c);
  if (f.c_inverse_band) write_ltm(dir / "c_inverse_band.ltm", *f.c_inverse_band);
  nlohmann::json meta{{"strategy", to_string(f.strategy)},
                      {"residual", f.residual},
                      {"schedule", nlohmann::json::parse(schedule_to_json(f.workload.schedule))}};
  if (f.bandwidth) meta["bandwidth"] = *f.bandwidth;
  if (f.base) meta["base"] = to_string(*f.base);
  std::ofstream out(dir / "factorization.json");
  if (!out) throw std::runtime_error("save_factorization: cannot write metadata");
  out << meta.dump(2) << '\n';
}

Factorization load_factorization(const std::filesystem::path& dir) {
  std::ifstream in(dir / "factorization.json");
  if (!in) throw std::runtime_error("load_factorization: missing metadata");
  nlohmann::json meta = nlohmann::json::parse(in);
  Factorization f;
  f.strategy = strategy_from_string(meta.at("strategy").get<std::string>());
  f.residual = meta.at("residual").get<double>();
  f.workload = build_workload(schedule_from_json(meta.at("schedule").dump()));
  if (meta.contains("bandwidth")) f.bandwidth = meta["bandwidth"].get<std::size_t>();
  if (meta.contains("base")) f.base = bisr_base_from_string(meta["base"].get<std::string>());
  f.b = std::get<LowerTriangular>(read_ltm(dir / "b.ltm"));
  f.c = std::get<LowerTriangular>(read_ltm(dir / "c.ltm"));
  if (std::filesystem::exists(dir / "c_inverse_band.ltm")) {
    f.c_inverse_band = std::get<LowerTriangular>(read_ltm(dir / "c_inverse_band.ltm"));
  }
  return f;
}

}  // namespace lrmf
