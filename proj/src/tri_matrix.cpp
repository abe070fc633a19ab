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

#include "lrmf/tri_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace lrmf {

namespace {

void require_positive_diagonal(const LowerTriangular& a, const char* op) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a(i, i) > 0.0)) {
      throw std::invalid_argument(std::string(op) +
                                  ": diagonal entry must be strictly positive");
    }
  }
}

}  // namespace

LowerTriangular LowerTriangular::Identity(std::size_t n) {
  LowerTriangular m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

LowerTriangular LowerTriangular::Ones(std::size_t n) {
  LowerTriangular m(n);
  std::fill(m.packed().begin(), m.packed().end(), 1.0);
  return m;
}

LowerTriangular ToeplitzLT::materialize() const {
  const std::size_t n = size();
  LowerTriangular m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = coeffs_[i - j];
  }
  return m;
}

LowerTriangular lt_multiply(const LowerTriangular& a, const LowerTriangular& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("lt_multiply: dimension mismatch");
  }
  const std::size_t n = a.size();
  LowerTriangular c(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ai = a.row(i);
    auto ci = c.row(i);
    // c(i, j) = sum_{k=j..i} a(i, k) b(k, j); iterate k outer so the b row
    // is walked contiguously.
    for (std::size_t k = 0; k <= i; ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j <= k; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

LowerTriangular lt_inverse(const LowerTriangular& a) {
  require_positive_diagonal(a, "lt_inverse");
  const std::size_t n = a.size();
  LowerTriangular inv(n);
  // Forward substitution for each column j of the inverse.
  for (std::size_t j = 0; j < n; ++j) {
    inv.at(j, j) = 1.0 / a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      auto ai = a.row(i);
      for (std::size_t k = j; k < i; ++k) s += ai[k] * inv(k, j);
      inv.at(i, j) = -s / ai[i];
    }
  }
  return inv;
}

LowerTriangular lt_sqrt(const LowerTriangular& a) {
  require_positive_diagonal(a, "lt_sqrt");
  const std::size_t n = a.size();
  LowerTriangular s(n);
  for (std::size_t i = 0; i < n; ++i) s.at(i, i) = std::sqrt(a(i, i));
  // Sweep subdiagonals outward; entries of diagonal d depend only on
  // shallower diagonals.
  for (std::size_t d = 1; d < n; ++d) {
    for (std::size_t i = d; i < n; ++i) {
      const std::size_t j = i - d;
      double acc = 0.0;
      for (std::size_t k = j + 1; k < i; ++k) acc += s(i, k) * s(k, j);
      const double denom = s(i, i) + s(j, j);
      if (std::abs(denom) < 1e-300) {
        throw std::runtime_error("lt_sqrt: vanishing diagonal pivot");
      }
      s.at(i, j) = (a(i, j) - acc) / denom;
    }
  }
  return s;
}

ToeplitzLT toeplitz_sqrt(const ToeplitzLT& t) {
  const auto& c = t.coeffs();
  if (c.empty() || !(c[0] > 0.0)) {
    throw std::invalid_argument("toeplitz_sqrt: leading coefficient must be positive");
  }
  std::vector<double> s(c.size());
  s[0] = std::sqrt(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j < k; ++j) acc += s[j] * s[k - j];
    s[k] = (c[k] - acc) / (2.0 * s[0]);
  }
  return ToeplitzLT(std::move(s));
}

ToeplitzLT toeplitz_inverse(const ToeplitzLT& t) {
  const auto& c = t.coeffs();
  if (c.empty() || c[0] == 0.0) {
    throw std::invalid_argument("toeplitz_inverse: leading coefficient must be nonzero");
  }
  std::vector<double> d(c.size());
  d[0] = 1.0 / c[0];
  for (std::size_t k = 1; k < c.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += c[j] * d[k - j];
    d[k] = -acc / c[0];
  }
  return ToeplitzLT(std::move(d));
}

ToeplitzLT toeplitz_multiply(const ToeplitzLT& a, const ToeplitzLT& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("toeplitz_multiply: dimension mismatch");
  }
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<double> z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += x[j] * y[k - j];
    z[k] = acc;
  }
  return ToeplitzLT(std::move(z));
}

LowerTriangular band(const LowerTriangular& a, std::size_t p) {
  if (p < 1 || p > a.size()) {
    throw std::invalid_argument("band: width out of range");
  }
  LowerTriangular m = a;
  for (std::size_t i = p; i < a.size(); ++i) {
    auto row = m.row(i);
    std::fill(row.begin(), row.begin() + (i - p + 1), 0.0);
  }
  return m;
}

ToeplitzLT band(const ToeplitzLT& t, std::size_t p) {
  if (p < 1 || p > t.size()) {
    throw std::invalid_argument("band: width out of range");
  }
  std::vector<double> c = t.coeffs();
  std::fill(c.begin() + p, c.end(), 0.0);
  return ToeplitzLT(std::move(c));
}

std::vector<double> col_norms(const LowerTriangular& a) {
  const std::size_t n = a.size();
  std::vector<long double> acc(n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = a.row(i);
    for (std::size_t j = 0; j <= i; ++j) acc[j] += (long double)row[j] * row[j];
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = std::sqrt((double)acc[j]);
  return out;
}

std::vector<double> col_norms(const ToeplitzLT& t) {
  const auto& c = t.coeffs();
  const std::size_t n = c.size();
  // Column j sees coefficients c_0..c_{n-1-j}; suffix sums of squares.
  std::vector<double> out(n);
  long double acc = 0.0L;
  for (std::size_t j = n; j-- > 0;) {
    acc += (long double)c[n - 1 - j] * c[n - 1 - j];
    out[j] = std::sqrt((double)acc);
  }
  return out;
}

std::vector<double> row_norms(const LowerTriangular& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long double acc = 0.0L;
    for (double v : a.row(i)) acc += (long double)v * v;
    out[i] = std::sqrt((double)acc);
  }
  return out;
}

std::vector<double> row_norms(const ToeplitzLT& t) {
  const auto& c = t.coeffs();
  std::vector<double> out(c.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += (long double)c[i] * c[i];
    out[i] = std::sqrt((double)acc);
  }
  return out;
}

double frobenius(const LowerTriangular& a) {
  long double acc = 0.0L;
  for (double v : a.packed()) acc += (long double)v * v;
  return std::sqrt((double)acc);
}

double frobenius(const ToeplitzLT& t) {
  const auto& c = t.coeffs();
  const std::size_t n = c.size();
  long double acc = 0.0L;
  for (std::size_t d = 0; d < n; ++d) {
    acc += (long double)(n - d) * c[d] * c[d];
  }
  return std::sqrt((double)acc);
}

double max_abs_diff(const LowerTriangular& a, const LowerTriangular& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double m = 0.0;
  auto pa = a.packed();
  auto pb = b.packed();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    m = std::max(m, std::abs(pa[i] - pb[i]));
  }
  return m;
}

namespace {

constexpr char kMagic[4] = {'L', 'T', 'M', '1'};
constexpr std::uint8_t kFlagDense = 0;
constexpr std::uint8_t kFlagToeplitz = 1;

static_assert(std::endian::native == std::endian::little,
              "matrix file io assumes a little-endian host");

void write_header(std::ofstream& out, std::uint64_t n, std::uint8_t flag) {
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&flag), 1);
}

void write_doubles(std::ofstream& out, std::span<const double> xs) {
  out.write(reinterpret_cast<const char*>(xs.data()),
            static_cast<std::streamsize>(xs.size() * sizeof(double)));
}

}  // namespace

void write_ltm(const std::filesystem::path& path, const LowerTriangular& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_ltm: cannot open " + path.string());
  write_header(out, a.size(), kFlagDense);
  write_doubles(out, a.packed());
  if (!out) throw std::runtime_error("write_ltm: write failed");
}

void write_ltm(const std::filesystem::path& path, const ToeplitzLT& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_ltm: cannot open " + path.string());
  write_header(out, t.size(), kFlagToeplitz);
  write_doubles(out, t.coeffs());
  if (!out) throw std::runtime_error("write_ltm: write failed");
}

TriMatrix read_ltm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_ltm: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("read_ltm: bad magic in " + path.string());
  }
  std::uint64_t n = 0;
  std::uint8_t flag = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&flag), 1);
  if (!in) throw std::runtime_error("read_ltm: truncated header");
  const std::size_t count =
      flag == kFlagDense ? static_cast<std::size_t>(n * (n + 1) / 2)
                         : static_cast<std::size_t>(n);
  std::vector<double> xs(count);
  in.read(reinterpret_cast<char*>(xs.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw std::runtime_error("read_ltm: truncated payload");
  if (flag == kFlagToeplitz) return ToeplitzLT(std::move(xs));
  if (flag != kFlagDense) throw std::runtime_error("read_ltm: unknown flag");
  LowerTriangular m(static_cast<std::size_t>(n));
  std::copy(xs.begin(), xs.end(), m.packed().begin());
  return m;
}

void write_csv(const std::filesystem::path& path, const LowerTriangular& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  out << "i,j,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out << i + 1 << ',' << j + 1 << ',' << a(i, j) << '\n';
    }
  }
}

}  // namespace lrmf
