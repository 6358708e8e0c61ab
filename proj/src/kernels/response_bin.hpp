// Copyright 2026 The floqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "floq/pauli.hpp"

namespace floq::kernels::detail {

/** Bin index for (edges[b], edges[b+1]], or -1 outside the grid. */
inline int bin_of(const std::vector<double>& edges, double nu) {
  if (!(nu > edges.front()) || nu > edges.back()) return -1;
  auto it = std::lower_bound(edges.begin(), edges.end(), nu);
  return static_cast<int>(it - edges.begin()) - 1;
}

inline void accumulate_pair(const Eigen::MatrixXcd& oa, const Eigen::MatrixXcd& ob,
                            const Eigen::VectorXd& e, const Eigen::VectorXd& p,
                            const std::vector<double>& edges, Complex* out) {
  const Eigen::Index dim = e.size();
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      const int b = bin_of(edges, e(m) - e(n));
      if (b < 0) continue;
      out[b] += std::numbers::pi * (p(n) - p(m)) * oa(n, m) * ob(m, n);
    }
  }
}

}  // namespace floq::kernels::detail
