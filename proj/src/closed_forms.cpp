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

#include "lrmf/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace lrmf {

ExpDecayParams exp_decay_params(std::size_t n, double beta) {
  if (n < 2) throw std::invalid_argument("exp_decay_params: n must be >= 2");
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("exp_decay_params: beta must lie in (0, 1)");
  }
  ExpDecayParams p;
  p.n = n;
  p.beta = beta;
  p.alpha = std::pow(beta, 1.0 / static_cast<double>(n - 1));
  return p;
}

std::vector<double> prefix_sqrt_coeffs(std::size_t n) {
  std::vector<double> r(n);
  if (n == 0) return r;
  r[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    r[j] = r[j - 1] * (2.0 * j - 1.0) / (2.0 * j);
  }
  return r;
}

std::vector<double> prefix_inv_sqrt_coeffs(std::size_t n) {
  std::vector<double> rt = prefix_sqrt_coeffs(n);
  for (std::size_t j = 1; j < n; ++j) rt[j] = -rt[j] / (2.0 * j - 1.0);
  return rt;
}

ToeplitzLT c_alpha(const ExpDecayParams& p) {
  std::vector<double> c = prefix_sqrt_coeffs(p.n);
  double pw = 1.0;
  for (std::size_t j = 1; j < p.n; ++j) {
    pw *= p.alpha;
    c[j] *= pw;
  }
  return ToeplitzLT(std::move(c));
}

LowerTriangular ScaledToeplitzLT::materialize() const {
  const std::size_t n = size();
  LowerTriangular m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = (*this)(i, j);
  }
  return m;
}

std::vector<double> exp_sqrt_gcoeffs(double alpha, std::size_t n) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("exp_sqrt_gcoeffs: alpha must lie in (0, 1)");
  }
  std::vector<double> g(n);
  if (n == 0) return g;
  g[0] = 1.0;
  const bool logspace = alpha > 0.999;
  const double la = std::log(alpha);
  double logg = 0.0;
  for (std::size_t d = 1; d < n; ++d) {
    const double kd = static_cast<double>(d);
    if (logspace) {
      // log1p of each factor avoids underflow of 1 - alpha^k as alpha -> 1.
      logg += std::log1p(-std::exp((kd - 0.5) * la)) -
              std::log1p(-std::exp(kd * la));
      g[d] = std::exp(logg);
    } else {
      g[d] = g[d - 1] * (1.0 - std::pow(alpha, kd - 0.5)) /
             (1.0 - std::pow(alpha, kd));
    }
  }
  return g;
}

ScaledToeplitzLT exp_workload_sqrt(const ExpDecayParams& p) {
  if (!(p.alpha < 1.0)) {
    throw std::invalid_argument("exp_workload_sqrt: alpha must be < 1");
  }
  ScaledToeplitzLT s;
  s.coeffs = exp_sqrt_gcoeffs(p.alpha, p.n);
  s.colscale.resize(p.n);
  const double sa = std::sqrt(p.alpha);
  double pw = 1.0;
  for (std::size_t l = 0; l < p.n; ++l) {
    s.colscale[l] = pw;  // alpha^{(l-1)/2}, 1-based l
    pw *= sa;
  }
  return s;
}

ScaledToeplitzLT exp_workload_inv_sqrt(const ExpDecayParams& p) {
  if (!(p.alpha < 1.0)) {
    throw std::invalid_argument("exp_workload_inv_sqrt: alpha must be < 1");
  }
  const double sa = std::sqrt(p.alpha);
  const std::vector<double> g = exp_sqrt_gcoeffs(p.alpha, p.n);
  ScaledToeplitzLT s;
  s.coeffs.resize(p.n);
  s.coeffs[0] = sa;
  for (std::size_t d = 1; d < p.n; ++d) {
    const double kd = static_cast<double>(d);
    s.coeffs[d] = -(1.0 - sa) * g[d] / (1.0 - std::pow(p.alpha, kd - 0.5));
  }
  s.colscale.resize(p.n);
  double pw = 1.0 / sa;
  for (std::size_t l = 0; l < p.n; ++l) {
    s.colscale[l] = pw;  // alpha^{-l/2}, 1-based l
    pw /= sa;
  }
  return s;
}

LowerTriangular b_alpha(const ExpDecayParams& p) {
  // B_{m,l} = sum_{j=l}^{m} chi_j (C_alpha^{-1})_{j,l}
  //         = chi_l sum_{t=0}^{m-l} alpha^{2t} rt_t,
  // accumulated row by row as a running sum per column.
  const ToeplitzLT cinv = toeplitz_inverse(c_alpha(p));
  const auto& t = cinv.coeffs();
  LowerTriangular b(p.n);
  std::vector<double> chi(p.n);
  chi[0] = 1.0;
  for (std::size_t i = 1; i < p.n; ++i) chi[i] = chi[i - 1] * p.alpha;
  std::vector<double> running(p.n, 0.0);
  for (std::size_t m = 0; m < p.n; ++m) {
    auto row = b.row(m);
    for (std::size_t l = 0; l <= m; ++l) {
      running[l] += chi[m] * t[m - l];
      row[l] = running[l];
    }
  }
  return b;
}

double b_alpha_closed_form_deviation(const ExpDecayParams& p) {
  const LowerTriangular b = b_alpha(p);
  const std::vector<double> r = prefix_sqrt_coeffs(p.n);
  // Partial sums sum_{t=0}^{d} alpha^{2t} r_t.
  std::vector<double> partial(p.n);
  double acc = 0.0;
  double pw = 1.0;
  const double a2 = p.alpha * p.alpha;
  for (std::size_t t = 0; t < p.n; ++t) {
    partial[t] = acc;  // sum up to t-1
    acc += pw * r[t];
    pw *= a2;
  }
  double dev = 0.0;
  for (std::size_t m = 0; m < p.n; ++m) {
    for (std::size_t l = 0; l <= m; ++l) {
      const std::size_t d = m - l;
      const double closed =
          std::pow(p.alpha, 2.0 * (m + 1) - (l + 1) - 1.0) * r[d] +
          std::pow(p.alpha, static_cast<double>(l)) * (1.0 - a2) * partial[d];
      dev = std::max(dev, std::abs(closed - b(m, l)));
    }
  }
  return dev;
}

double q_gamma_half(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw std::invalid_argument("q_gamma_half: q must lie in (0, 1)");
  }
  // Gamma_q(1/2) = (1 - q)^{1/2} (q; q)_inf / (q^{1/2}; q)_inf.
  const double sq = std::sqrt(q);
  double log_num = 0.0;
  double log_den = 0.0;
  double qa = q;   // q^{k+1}
  double qb = sq;  // q^{k+1/2}
  while (qa > 1e-16 || qb > 1e-16) {
    log_num += std::log1p(-qa);
    log_den += std::log1p(-qb);
    qa *= q;
    qb *= q;
  }
  return std::sqrt(1.0 - q) * std::exp(log_num - log_den);
}

}  // namespace lrmf
