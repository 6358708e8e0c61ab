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

#include <bit>
#include <cstdint>
#include <vector>

#include "floq/pauli.hpp"

namespace floq::kernels::detail {

/** A term re-expressed on the local basis of an ordered site list. */
struct LocalTerm {
  std::uint64_t x;
  std::uint64_t z;
  Complex weight;  // coefficient times i^(number of Y letters)
};

inline std::uint64_t compress(std::uint64_t mask, const std::vector<int>& sites) {
  const int n = static_cast<int>(sites.size());
  std::uint64_t out = 0;
  for (int p = 0; p < n; ++p)
    if ((mask >> sites[p]) & 1) out |= std::uint64_t(1) << (n - 1 - p);
  return out;
}

inline std::vector<LocalTerm> localize(std::span<const Term> terms,
                                       const std::vector<int>& sites) {
  std::vector<LocalTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    int ny = std::popcount(t.string.x() & t.string.z());
    out.push_back({compress(t.string.x(), sites), compress(t.string.z(), sites),
                   t.coefficient * i_pow(ny)});
  }
  return out;
}

inline Complex sign_of(std::uint64_t b, std::uint64_t z) {
  return (std::popcount(b & z) & 1) ? -1.0 : 1.0;
}

}  // namespace floq::kernels::detail
