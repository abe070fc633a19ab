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
#include <stdexcept>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "lrmf/metrics.hpp"

using namespace lrmf;

TEST_CASE("gaussian rows are reproducible and row-independent") {
  const auto a = gaussian_row(42, 7, 16, 1.0);
  const auto b = gaussian_row(42, 7, 16, 1.0);
  CHECK(a == b);
  CHECK(a != gaussian_row(42, 8, 16, 1.0));
  CHECK(a != gaussian_row(43, 7, 16, 1.0));

  const auto scaled = gaussian_row(42, 7, 16, 2.5);
  for (std::size_t i = 0; i < 16; ++i) CHECK(scaled[i] == doctest::Approx(2.5 * a[i]));

  for (double v : gaussian_row(1, 2, 8, 0.0)) CHECK(v == 0.0);
}

TEST_CASE("gaussian rows have roughly unit variance") {
  double sum = 0.0, sumsq = 0.0;
  const std::size_t rows = 200, d = 100;
  for (std::size_t r = 0; r < rows; ++r) {
    for (double v : gaussian_row(9, r, d, 1.0)) {
      sum += v;
      sumsq += v * v;
    }
  }
  const double mean = sum / double(rows * d);
  const double var = sumsq / double(rows * d) - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("identity stream returns the raw noise") {
  auto s = NoiseStream::Banded(LowerTriangular::Identity(8), 1, 4, 1.3, 11);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(s.next() == gaussian_row(11, i, 4, 1.3));
    CHECK(s.buffer_rows() <= 1);
  }
  CHECK_THROWS_AS(s.next(), std::out_of_range);
}

TEST_CASE("banded stream equals dense replay with the shared seed") {
  const std::size_t n = 128, p = 8, d = 16;
  const auto w = build_workload(make_schedule(ScheduleKind::kExponential, n, 0.1));
  const auto f = bisr(w, p, BisrBase::kPrefixWorkload);
  REQUIRE(f.c_inverse_band.has_value());

  auto banded = NoiseStream::Banded(*f.c_inverse_band, p, d, 1.0, 99);
  auto dense = NoiseStream::Dense(lt_inverse(f.c), d, 1.0, 99);
  for (std::size_t i = 0; i < n; ++i) {
    const auto bi = banded.next();
    const auto di = dense.next();
    CHECK(banded.buffer_rows() <= p);
    for (std::size_t c = 0; c < d; ++c) CHECK(std::abs(bi[c] - di[c]) < 1e-8);
  }
}

TEST_CASE("clip") {
  const auto halved = clip({3.0, 4.0}, 2.5);
  CHECK(halved[0] == doctest::Approx(1.5));
  CHECK(halved[1] == doctest::Approx(2.0));
  CHECK(clip({0.1, 0.2}, 1.0) == std::vector<double>{0.1, 0.2});
  CHECK(clip({0.0, 0.0}, 1.0) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("noise-free constant-schedule run is plain SGD") {
  const std::size_t n = 32, d = 3;
  const auto w = build_workload(make_schedule(ScheduleKind::kConstant, n, 1.0));
  const auto f = factorize(w, Strategy::kSquareRoot);

  QuadraticObjective q;
  q.curvature = {0.5, 1.0, 0.25};
  q.optimum = {1.0, -2.0, 0.5};
  SimConfig cfg;
  cfg.objective = q;
  cfg.eta = 0.4;
  cfg.zeta = 100.0;  // never binds
  cfg.batch = 2;
  cfg.sigma_eps_delta = 0.0;
  cfg.d = d;

  const auto t = dp_sgd_run(cfg, f);
  REQUIRE(t.theta.size() == n);
  std::vector<double> theta(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      theta[c] -= cfg.eta * q.curvature[c] * (theta[c] - q.optimum[c]);
      CHECK(std::abs(t.theta[i][c] - theta[c]) < 1e-12);
    }
    CHECK(t.noise_norms[i] == 0.0);
  }
  // Losses decrease toward the optimum on a convex quadratic.
  CHECK(t.losses.back() < t.losses.front());
}

TEST_CASE("state-independent gradients stack to the workload identity") {
  const std::size_t n = 16, d = 2;
  const auto w = build_workload(make_schedule(ScheduleKind::kPolynomial, n, 0.25, 2.0));
  const auto f = factorize(w, Strategy::kLrAware);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> gdist(0.0, 1.0);
  std::vector<std::vector<double>> g(n, std::vector<double>(d));
  for (auto& row : g)
    for (auto& v : row) v = gdist(rng);

  SimConfig cfg;
  cfg.objective = QuadraticObjective{{0.0, 0.0}, {0.0, 0.0}};
  cfg.eta = 0.7;
  cfg.zeta = 10.0;
  cfg.batch = 1;
  cfg.sigma_eps_delta = 0.0;
  cfg.d = d;

  const auto oracle = [&](std::size_t step, std::span<const double>) {
    return std::vector<std::vector<double>>{g[step]};
  };
  const auto t = dp_sgd_run(cfg, f, oracle);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += w.a_chi(i, j) * g[j][c];
      CHECK(std::abs(t.theta[i][c] + cfg.eta * acc) < 1e-10);
    }
  }
}

TEST_CASE("runs are deterministic given the seeds") {
  const auto w = build_workload(make_schedule(ScheduleKind::kLinear, 20, 0.5));
  const auto f = factorize(w, Strategy::kPrefixSqrt);
  SimConfig cfg;
  cfg.objective = LinearRegressionObjective{17, 40, 4};
  cfg.eta = 0.05;
  cfg.zeta = 1.0;
  cfg.batch = 4;
  cfg.sigma_eps_delta = 0.5;
  cfg.noise_seed = 123;
  cfg.d = 4;
  const auto a = dp_sgd_run(cfg, f);
  const auto b = dp_sgd_run(cfg, f);
  CHECK(a.theta == b.theta);
  CHECK(a.losses == b.losses);
  CHECK(a.noise_norms == b.noise_norms);
}

TEST_CASE("trajectory csv export") {
  Trajectory t;
  t.theta = {{1.0, 0.0}, {0.5, 0.5}};
  t.losses = {2.0, 1.0};
  t.noise_norms = {0.0, 0.1};
  const auto path = std::filesystem::temp_directory_path() / "lrmf_traj.csv";
  write_trajectory_csv(path, t);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}
