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

#ifndef LRMF_WORKLOAD_HPP_
#define LRMF_WORKLOAD_HPP_

#include "lrmf/schedules.hpp"
#include "lrmf/tri_matrix.hpp"

namespace lrmf {

// The SGD workload pair for a schedule chi: the column-scaled prefix-sum
// matrix A_chi (entry (m, l) = chi_l for l <= m, i.e. A_1 * diag(chi)) and
// its Toeplitz counterpart with chi on the subdiagonals. Base learning rate
// is unity; eta enters only in the simulator.
struct Workload {
  Schedule schedule;
  LowerTriangular a_chi;
  ToeplitzLT a_toep;
};

Workload build_workload(const Schedule& s);

}  // namespace lrmf

#endif  // LRMF_WORKLOAD_HPP_
