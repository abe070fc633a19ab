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

#include "lrmf/noise_engine.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "lrmf/metrics.hpp"

namespace lrmf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform_open(std::uint64_t bits) {
  // (0, 1): top 53 bits, offset by half an ulp so log() never sees zero.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> gaussian_row(std::uint64_t seed, std::uint64_t row,
                                 std::size_t d, double sigma) {
  std::vector<double> z(d);
  if (sigma == 0.0) return z;
  std::uint64_t state = splitmix64(seed ^ splitmix64(row + 1));
  for (std::size_t j = 0; j + 1 < d; j += 2) {
    const double u1 = uniform_open(state = splitmix64(state));
    const double u2 = uniform_open(state = splitmix64(state));
    const double radius = sigma * std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z[j] = radius * std::cos(angle);
    z[j + 1] = radius * std::sin(angle);
  }
  if (d % 2 == 1) {
    const double u1 = uniform_open(state = splitmix64(state));
    const double u2 = uniform_open(state = splitmix64(state));
    z[d - 1] = sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
  }
  return z;
}

NoiseStream NoiseStream::Banded(LowerTriangular m, std::size_t p, std::size_t d,
                                double sigma, std::uint64_t seed) {
  if (p < 1 || p > m.size()) {
    throw std::invalid_argument("NoiseStream: bandwidth out of range");
  }
  return NoiseStream(std::move(m), p, d, sigma, seed);
}

NoiseStream NoiseStream::Dense(LowerTriangular c_inv, std::size_t d, double sigma,
                               std::uint64_t seed) {
  const std::size_t n = c_inv.size();
  return NoiseStream(std::move(c_inv), n, d, sigma, seed);
}

std::vector<double> NoiseStream::next() {
  const std::size_t i = step_;
  if (i >= m_.size()) throw std::out_of_range("NoiseStream: stream exhausted");
  buffer_.push_back(gaussian_row(seed_, i, d_, sigma_));
  if (buffer_.size() > p_) buffer_.pop_front();

  std::vector<double> out(d_, 0.0);
  // buffer_ holds z_{i-buffer+1} .. z_i; row i of M touches columns
  // i - (p - 1) .. i at most.
  const std::size_t lookback = buffer_.size();
  for (std::size_t t = 0; t < lookback; ++t) {
    const double w = m_(i, i - t);
    if (w == 0.0) continue;
    const auto& z = buffer_[lookback - 1 - t];
    for (std::size_t j = 0; j < d_; ++j) out[j] += w * z[j];
  }
  ++step_;
  return out;
}

std::vector<double> clip(std::vector<double> g, double zeta) {
  if (!(zeta > 0.0)) throw std::invalid_argument("clip: zeta must be positive");
  long double acc = 0.0L;
  for (double v : g) acc += (long double)v * v;
  const double norm = std::sqrt((double)acc);
  if (norm > zeta) {
    const double scale = zeta / norm;
    for (double& v : g) v *= scale;
  }
  return g;
}

namespace {

struct LinRegData {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
};

LinRegData make_linreg_data(const LinearRegressionObjective& o, std::size_t d) {
  if (o.dims != d) {
    throw std::invalid_argument("linear regression dims must match model dimension");
  }
  LinRegData data;
  data.x.resize(o.samples);
  data.y.resize(o.samples);
  std::vector<double> w = gaussian_row(o.data_seed, 0, d, 1.0);
  for (std::size_t s = 0; s < o.samples; ++s) {
    data.x[s] = gaussian_row(o.data_seed, s + 1, d, 1.0);
    double dot = 0.0;
    for (std::size_t j = 0; j < d; ++j) dot += data.x[s][j] * w[j];
    data.y[s] = dot + 0.1 * gaussian_row(o.data_seed, o.samples + 1 + s, 1, 1.0)[0];
  }
  return data;
}

}  // namespace

Trajectory dp_sgd_run(const SimConfig& cfg, const Factorization& f) {
  if (std::holds_alternative<QuadraticObjective>(cfg.objective)) {
    const auto& q = std::get<QuadraticObjective>(cfg.objective);
    if (q.curvature.size() != cfg.d || q.optimum.size() != cfg.d) {
      throw std::invalid_argument("quadratic objective dimension mismatch");
    }
    GradientOracle oracle = [&q, &cfg](std::size_t, std::span<const double> theta) {
      std::vector<double> g(theta.size());
      for (std::size_t j = 0; j < theta.size(); ++j) {
        g[j] = q.curvature[j] * (theta[j] - q.optimum[j]);
      }
      return std::vector<std::vector<double>>(cfg.batch, g);
    };
    return dp_sgd_run(cfg, f, oracle);
  }
  const auto& lin = std::get<LinearRegressionObjective>(cfg.objective);
  const auto data = make_linreg_data(lin, cfg.d);
  GradientOracle oracle = [data, &cfg](std::size_t step, std::span<const double> theta) {
    std::vector<std::vector<double>> grads(cfg.batch);
    for (std::size_t j = 0; j < cfg.batch; ++j) {
      const auto& x = data.x[(step * cfg.batch + j) % data.x.size()];
      const double y = data.y[(step * cfg.batch + j) % data.y.size()];
      double dot = 0.0;
      for (std::size_t t = 0; t < theta.size(); ++t) dot += x[t] * theta[t];
      grads[j].resize(theta.size());
      for (std::size_t t = 0; t < theta.size(); ++t) grads[j][t] = (dot - y) * x[t];
    }
    return grads;
  };
  return dp_sgd_run(cfg, f, oracle);
}

Trajectory dp_sgd_run(const SimConfig& cfg, const Factorization& f,
                      const GradientOracle& oracle) {
  const std::size_t n = f.workload.schedule.n;
  if (cfg.batch < 1) throw std::invalid_argument("dp_sgd_run: batch must be >= 1");

  const double sigma = sensitivity_single(f.c) * cfg.sigma_eps_delta * cfg.zeta;
  NoiseStream stream =
      f.c_inverse_band
          ? NoiseStream::Banded(*f.c_inverse_band, *f.bandwidth, cfg.d, sigma,
                                cfg.noise_seed)
          : NoiseStream::Dense(lt_inverse(f.c), cfg.d, sigma, cfg.noise_seed);

  Trajectory traj;
  traj.theta.reserve(n);
  traj.losses.reserve(n);
  traj.noise_norms.reserve(n);

  std::vector<double> theta(cfg.d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto grads = oracle(i, theta);
    if (grads.size() != cfg.batch) {
      throw std::runtime_error("gradient oracle returned wrong batch size");
    }
    std::vector<double> x(cfg.d, 0.0);
    for (const auto& g : grads) {
      const auto clipped = clip(g, cfg.zeta);
      for (std::size_t j = 0; j < cfg.d; ++j) x[j] += clipped[j];
    }
    const auto noise = stream.next();
    const double chi_eta = f.workload.schedule.values[i] * cfg.eta;
    long double noise_sq = 0.0L;
    for (std::size_t j = 0; j < cfg.d; ++j) {
      const double xhat = (x[j] + noise[j]) / static_cast<double>(cfg.batch);
      theta[j] -= chi_eta * xhat;
      noise_sq += (long double)noise[j] * noise[j];
    }
    traj.theta.push_back(theta);
    traj.noise_norms.push_back(std::sqrt((double)noise_sq));

    double loss = 0.0;
    if (std::holds_alternative<QuadraticObjective>(cfg.objective)) {
      const auto& q = std::get<QuadraticObjective>(cfg.objective);
      for (std::size_t j = 0; j < cfg.d; ++j) {
        const double dv = theta[j] - q.optimum[j];
        loss += 0.5 * q.curvature[j] * dv * dv;
      }
    } else {
      // Squared residual of the first example of the next batch; cheap and
      // deterministic.
      const auto next_grads = oracle(i, theta);
      long double acc = 0.0L;
      for (double v : next_grads[0]) acc += (long double)v * v;
      loss = 0.5 * (double)acc;
    }
    traj.losses.push_back(loss);
  }
  return traj;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path.string());
  out << "step,loss,theta_norm,noise_norm\n";
  out.precision(17);
  for (std::size_t i = 0; i < t.theta.size(); ++i) {
    long double acc = 0.0L;
    for (double v : t.theta[i]) acc += (long double)v * v;
    out << i + 1 << ',' << t.losses[i] << ',' << std::sqrt((double)acc) << ','
        << t.noise_norms[i] << '\n';
  }
}

}  // namespace lrmf
