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

#include <cstdint>
#include <span>
#include <vector>

namespace floq {

enum class Boundary { Open, Periodic };

/**
 * Hypercubic lattice with row-major site numbering (the last coordinate
 * varies fastest). Distances are Euclidean; with periodic boundaries each
 * coordinate difference uses the minimum image.
 */
class Lattice {
 public:
  Lattice(std::vector<int> extents, Boundary boundary = Boundary::Open);

  static Lattice chain(int n, Boundary boundary = Boundary::Open) {
    return Lattice({n}, boundary);
  }

  int dimension() const { return static_cast<int>(extents_.size()); }
  int size() const { return n_; }
  const std::vector<int>& extents() const { return extents_; }
  Boundary boundary() const { return boundary_; }

  std::vector<int> coordinates(int site) const;
  int index(std::span<const int> coords) const;

  double distance(int i, int j) const;
  /** Sites at distance exactly 1. */
  std::vector<int> neighbors(int site) const;

 private:
  void check(int site) const;

  std::vector<int> extents_;
  Boundary boundary_;
  int n_;
};

/** Sorted set of distinct site indices. */
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(std::vector<int> members);
  SiteSet(std::initializer_list<int> members)
      : SiteSet(std::vector<int>(members)) {}

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int site) const;

 private:
  std::vector<int> members_;
};

/** phi(X): members of X with at least one nearest neighbour outside X. */
int boundary_area(const Lattice& lattice, const SiteSet& x);

/** Smallest distance between a member of X and a member of Y. */
double set_distance(const Lattice& lattice, const SiteSet& x, const SiteSet& y);

/**
 * Radius of a ball enclosing X, centred at the midpoint of the bounding box
 * of X (open boundaries). Exact for intervals and boxes.
 */
double enclosing_radius(const Lattice& lattice, const SiteSet& x);

struct LatticeConstants {
  double lambda0;
  double lambda1;
  double lambda;
};

/**
 * lambda0 = sup_i (1 + sum_j d_ij^-a),
 * lambda1 = sup_{i!=j} d_ij^a sum_l d_il^-a d_lj^-a,
 * lambda  = 2 (6 lambda0 + 2 lambda1 + 1),
 * all on the finite lattice. Requires alpha > D.
 */
LatticeConstants lattice_constants(const Lattice& lattice, double alpha);

}  // namespace floq
