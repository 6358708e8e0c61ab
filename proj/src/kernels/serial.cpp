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

#include <algorithm>

#include "floq/dense.hpp"
#include "floq/kernels.hpp"
#include "local_image.hpp"

namespace floq::kernels::serial {

std::vector<Term> product(TermSpan a, TermSpan b, ProductMode mode) {
  std::vector<Term> out;
  const bool comm = mode == ProductMode::Commutator;
  for (std::size_t lo = 0; lo < a.size(); lo += omp::kProductBlock) {
    std::vector<Term> block;
    const std::size_t end = std::min(a.size(), lo + omp::kProductBlock);
    for (std::size_t i = lo; i < end; ++i) {
      const auto& ta = a[i];
      for (const auto& tb : b) {
        if (comm && ta.string.commutes_with(tb.string)) continue;
        auto p = multiply(ta.string, tb.string);
        Complex c = i_pow(p.phase) * ta.coefficient * tb.coefficient;
        block.push_back({p.string, comm ? 2.0 * c : c});
      }
    }
    // Same block partial sums as the parallel kernel.
    canonicalize(block, 0.0);
    out.insert(out.end(), block.begin(), block.end());
  }
  canonicalize(out);
  return out;
}

void fill_matrix(TermSpan terms, const std::vector<int>& sites,
                 Eigen::MatrixXcd& out) {
  const std::uint64_t dim = std::uint64_t(1) << sites.size();
  out.setZero(dim, dim);
  for (const auto& t : detail::localize(terms, sites))
    for (std::uint64_t b = 0; b < dim; ++b)
      out(b ^ t.x, b) += t.weight * detail::sign_of(b, t.z);
}

std::vector<double> group_norms(const std::vector<std::vector<Term>>& groups) {
  std::vector<double> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    std::uint64_t mask = 0;
    for (const auto& t : g) mask |= t.string.support_mask();
    std::vector<int> sites;
    for (std::uint64_t m = mask; m; m &= m - 1) sites.push_back(std::countr_zero(m));
    Eigen::MatrixXcd m;
    fill_matrix(g, sites, m);
    out.push_back(spectral_norm(m));
  }
  return out;
}

}  // namespace floq::kernels::serial

#include "response_bin.hpp"

namespace floq::kernels::serial {

std::vector<Complex> response_bins(const std::vector<Eigen::MatrixXcd>& ops,
                                   const Eigen::VectorXd& energies,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& edges) {
  const std::size_t nops = ops.size(), nbins = edges.size() - 1;
  std::vector<Complex> out(nops * nops * nbins, 0.0);
  for (std::size_t a = 0; a < nops; ++a)
    for (std::size_t b = 0; b < nops; ++b)
      detail::accumulate_pair(ops[a], ops[b], energies, p, edges,
                              out.data() + (a * nops + b) * nbins);
  return out;
}

}  // namespace floq::kernels::serial
