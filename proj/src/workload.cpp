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

#include "lrmf/workload.hpp"

#include <stdexcept>

namespace lrmf {

Workload build_workload(const Schedule& s) {
  if (s.values.size() != s.n || s.n == 0) {
    throw std::invalid_argument("build_workload: malformed schedule");
  }
  Workload w;
  w.schedule = s;
  w.a_chi = LowerTriangular(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) w.a_chi.at(i, j) = s.values[j];
  }
  w.a_toep = ToeplitzLT(s.values);
  return w;
}

}  // namespace lrmf
