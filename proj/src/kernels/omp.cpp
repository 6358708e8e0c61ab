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

#include <omp.h>

#include "floq/dense.hpp"
#include "floq/kernels.hpp"
#include "local_image.hpp"

namespace floq::kernels {

int thread_count() { return omp_get_max_threads(); }
void set_thread_count(int n) { omp_set_num_threads(n < 1 ? 1 : n); }

namespace omp {

std::vector<Term> product(TermSpan a, TermSpan b, ProductMode mode) {
  const bool comm = mode == ProductMode::Commutator;
  const std::size_t nblocks = (a.size() + kProductBlock - 1) / kProductBlock;
  std::vector<std::vector<Term>> partial(nblocks);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t blk = 0; blk < nblocks; ++blk) {
    auto& out = partial[blk];
    const std::size_t end = std::min(a.size(), (blk + 1) * kProductBlock);
    for (std::size_t i = blk * kProductBlock; i < end; ++i) {
      const auto& ta = a[i];
      for (const auto& tb : b) {
        if (comm && ta.string.commutes_with(tb.string)) continue;
        auto p = multiply(ta.string, tb.string);
        Complex c = i_pow(p.phase) * ta.coefficient * tb.coefficient;
        out.push_back({p.string, comm ? 2.0 * c : c});
      }
    }
    // Prune only once, after the global merge.
    canonicalize(out, 0.0);
  }

  std::size_t total = 0;
  for (const auto& p : partial) total += p.size();
  std::vector<Term> out;
  out.reserve(total);
  for (auto& p : partial) {
    out.insert(out.end(), p.begin(), p.end());
    std::vector<Term>().swap(p);
  }
  canonicalize(out);
  return out;
}

void fill_matrix(TermSpan terms, const std::vector<int>& sites,
                 Eigen::MatrixXcd& out) {
  const std::int64_t dim = std::int64_t(1) << sites.size();
  out.setZero(dim, dim);
  const auto local = detail::localize(terms, sites);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < dim; ++b)
    for (const auto& t : local)
      out(b ^ t.x, b) += t.weight * detail::sign_of(b, t.z);
}

std::vector<double> group_norms(const std::vector<std::vector<Term>>& groups) {
  std::vector<double> out(groups.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::uint64_t mask = 0;
    for (const auto& t : groups[g]) mask |= t.string.support_mask();
    std::vector<int> sites;
    for (std::uint64_t m = mask; m; m &= m - 1) sites.push_back(std::countr_zero(m));
    Eigen::MatrixXcd m;
    serial::fill_matrix(groups[g], sites, m);
    out[g] = spectral_norm(m);
  }
  return out;
}

}  // namespace omp
}  // namespace floq::kernels

#include "response_bin.hpp"

namespace floq::kernels::omp {

std::vector<Complex> response_bins(const std::vector<Eigen::MatrixXcd>& ops,
                                   const Eigen::VectorXd& energies,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& edges) {
  const std::size_t nops = ops.size(), nbins = edges.size() - 1;
  std::vector<Complex> out(nops * nops * nbins, 0.0);
  // Each pair owns its slice of the output, so no reduction is shared.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t pair = 0; pair < nops * nops; ++pair)
    detail::accumulate_pair(ops[pair / nops], ops[pair % nops], energies, p, edges,
                            out.data() + pair * nbins);
  return out;
}

}  // namespace floq::kernels::omp
