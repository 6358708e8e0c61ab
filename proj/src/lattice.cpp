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

#include "floq/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "floq/errors.hpp"

namespace floq {

Lattice::Lattice(std::vector<int> extents, Boundary boundary)
    : extents_(std::move(extents)), boundary_(boundary), n_(1) {
  if (extents_.empty()) throw DomainError("lattice needs dimension >= 1");
  for (int e : extents_) {
    if (e < 1) throw DomainError("lattice extents must be positive");
    n_ *= e;
  }
}

void Lattice::check(int site) const {
  if (site < 0 || site >= n_)
    throw IndexError(fmt::format("site {} outside [0, {})", site, n_));
}

std::vector<int> Lattice::coordinates(int site) const {
  check(site);
  std::vector<int> c(extents_.size());
  for (int d = dimension() - 1; d >= 0; --d) {
    c[d] = site % extents_[d];
    site /= extents_[d];
  }
  return c;
}

int Lattice::index(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != dimension())
    throw IndexError("coordinate tuple has wrong dimension");
  int s = 0;
  for (int d = 0; d < dimension(); ++d) {
    if (coords[d] < 0 || coords[d] >= extents_[d])
      throw IndexError(fmt::format("coordinate {} out of range", coords[d]));
    s = s * extents_[d] + coords[d];
  }
  return s;
}

double Lattice::distance(int i, int j) const {
  check(i);
  check(j);
  if (i == j) return 0.0;
  double sum = 0.0;
  for (int d = dimension() - 1; d >= 0; --d) {
    int e = extents_[d];
    int delta = std::abs(i % e - j % e);
    if (boundary_ == Boundary::Periodic) delta = std::min(delta, e - delta);
    sum += double(delta) * delta;
    i /= e;
    j /= e;
  }
  return std::sqrt(sum);
}

std::vector<int> Lattice::neighbors(int site) const {
  auto c = coordinates(site);
  std::vector<int> out;
  for (int d = 0; d < dimension(); ++d) {
    for (int step : {-1, 1}) {
      auto n = c;
      n[d] += step;
      if (n[d] < 0 || n[d] >= extents_[d]) {
        if (boundary_ == Boundary::Open) continue;
        n[d] = (n[d] + extents_[d]) % extents_[d];
      }
      int s = index(n);
      if (s != site && std::find(out.begin(), out.end(), s) == out.end())
        out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SiteSet::SiteSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SiteSet::contains(int site) const {
  return std::binary_search(members_.begin(), members_.end(), site);
}

int boundary_area(const Lattice& lattice, const SiteSet& x) {
  if (x.empty()) throw DomainError("boundary_area of an empty set");
  for (int s : x.members()) lattice.distance(s, s);
  if (x.size() >= lattice.size())
    throw DomainError("boundary_area of the full lattice");
  int count = 0;
  for (int s : x.members()) {
    for (int n : lattice.neighbors(s)) {
      if (!x.contains(n)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

double set_distance(const Lattice& lattice, const SiteSet& x,
                    const SiteSet& y) {
  double best = std::numeric_limits<double>::infinity();
  for (int i : x.members())
    for (int j : y.members()) best = std::min(best, lattice.distance(i, j));
  return best;
}

double enclosing_radius(const Lattice& lattice, const SiteSet& x) {
  if (x.empty()) return 0.0;
  int dim = lattice.dimension();
  std::vector<double> lo(dim, 1e300), hi(dim, -1e300);
  std::vector<std::vector<int>> coords;
  for (int s : x.members()) {
    coords.push_back(lattice.coordinates(s));
    for (int d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], double(coords.back()[d]));
      hi[d] = std::max(hi[d], double(coords.back()[d]));
    }
  }
  double r = 0.0;
  for (const auto& c : coords) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      double delta = c[d] - 0.5 * (lo[d] + hi[d]);
      s += delta * delta;
    }
    r = std::max(r, std::sqrt(s));
  }
  return r;
}

LatticeConstants lattice_constants(const Lattice& lattice, double alpha) {
  if (!(alpha > lattice.dimension()))
    throw DomainError(fmt::format(
        "lattice constants need alpha > D (alpha = {}, D = {})", alpha,
        lattice.dimension()));
  const int n = lattice.size();
  std::vector<double> w(size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) w[size_t(i) * n + j] = std::pow(lattice.distance(i, j), -alpha);

  double lambda0 = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 1.0;
    for (int j = 0; j < n; ++j) s += w[size_t(i) * n + j];
    lambda0 = std::max(lambda0, s);
  }
  double lambda1 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double s = 0.0;
      for (int l = 0; l < n; ++l)
        if (l != i && l != j) s += w[size_t(i) * n + l] * w[size_t(l) * n + j];
      lambda1 = std::max(lambda1, s / w[size_t(i) * n + j]);
    }
  }
  return {lambda0, lambda1, 2.0 * (6.0 * lambda0 + 2.0 * lambda1 + 1.0)};
}

}  // namespace floq
