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

#ifndef LRMF_NOISE_ENGINE_HPP_
#define LRMF_NOISE_ENGINE_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "lrmf/factorizations.hpp"
#include "lrmf/tri_matrix.hpp"

namespace lrmf {

// Row i of the raw noise matrix Z, i.i.d. N(0, sigma^2) entries. The draw is
// counter-based on (seed, row): any row can be regenerated independently, so
// a streaming consumer and a dense replay see bit-identical noise.
std::vector<double> gaussian_row(std::uint64_t seed, std::uint64_t row,
                                 std::size_t d, double sigma);

// Sequential generator for the rows of M * Z where M is lower triangular.
// Banded mode holds only the last min(p, i) raw noise rows; dense mode keeps
// the full history. Single-consumer: rows come out in step order.
class NoiseStream {
 public:
  static NoiseStream Banded(LowerTriangular m, std::size_t p, std::size_t d,
                            double sigma, std::uint64_t seed);
  static NoiseStream Dense(LowerTriangular c_inv, std::size_t d, double sigma,
                           std::uint64_t seed);

  // Next correlated-noise row; throws once all n rows are consumed.
  std::vector<double> next();

  std::size_t step() const { return step_; }
  std::size_t length() const { return m_.size(); }
  std::size_t buffer_rows() const { return buffer_.size(); }

 private:
  NoiseStream(LowerTriangular m, std::size_t p, std::size_t d, double sigma,
              std::uint64_t seed)
      : m_(std::move(m)), p_(p), d_(d), sigma_(sigma), seed_(seed) {}

  LowerTriangular m_;
  std::size_t p_;
  std::size_t d_;
  double sigma_;
  std::uint64_t seed_;
  std::size_t step_ = 0;
  std::deque<std::vector<double>> buffer_;  // raw z rows, newest at the back
};

// clip(g, zeta) = g * min(1, zeta / ||g||_2); the zero vector stays zero.
std::vector<double> clip(std::vector<double> g, double zeta);

// Synthetic objectives. The quadratic has elementwise curvature h and
// optimum theta*; every example in a batch shares the gradient
// h .* (theta - theta*). The regression draws a fixed synthetic dataset and
// cycles through it in deterministic batches.
struct QuadraticObjective {
  std::vector<double> curvature;
  std::vector<double> optimum;
};

struct LinearRegressionObjective {
  std::uint64_t data_seed = 0;
  std::size_t samples = 0;
  std::size_t dims = 0;
};

struct SimConfig {
  std::variant<QuadraticObjective, LinearRegressionObjective> objective;
  double eta = 1.0;   // base learning rate
  double zeta = 1.0;  // clip norm
  std::size_t batch = 1;
  double sigma_eps_delta = 0.0;  // Gaussian-mechanism noise multiplier
  std::uint64_t noise_seed = 0;
  std::size_t d = 1;  // model dimension
};

struct Trajectory {
  std::vector<std::vector<double>> theta;  // n rows of dimension d
  std::vector<double> losses;
  std::vector<double> noise_norms;
};

// Per-example gradients for a step: given theta, returns `batch` gradient
// vectors.
using GradientOracle = std::function<std::vector<std::vector<double>>(
    std::size_t step, std::span<const double> theta)>;

// One pass of private SGD with correlated noise: per step, clip each
// example's gradient, sum, add the correlated noise row (raw scale
// sens(C) * sigma_{eps,delta} * zeta), divide by the batch size, and step
// by chi_i * eta. Deterministic given the seeds.
Trajectory dp_sgd_run(const SimConfig& cfg, const Factorization& f);
Trajectory dp_sgd_run(const SimConfig& cfg, const Factorization& f,
                      const GradientOracle& oracle);

// Trajectory CSV: step, loss, theta_norm, noise_norm.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t);

}  // namespace lrmf

#endif  // LRMF_NOISE_ENGINE_HPP_
