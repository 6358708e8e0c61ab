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

#include <vector>

#include "floq/dense.hpp"
#include "floq/lattice.hpp"

namespace floq {

struct DriveSite {
  int site;
  OperatorSum op;
};

struct ResponseConfig {
  double beta = 1.0;
  std::vector<DriveSite> drive_sites;
  /** Strictly increasing bin edges; bins are (lo, hi]. */
  std::vector<double> omega_grid;
  /** Width of the Gaussian window in the time-domain check. */
  double broadening = 1.0;
  std::vector<int> k_grid = {0, 1, 2, 3, 4, 5, 6, 7, 8};
};

/** ||ad_H^k O|| for each k of a grid, computed exactly. */
struct AdjointNorms {
  std::vector<int> k;
  std::vector<double> norm;
};

AdjointNorms adjoint_norms(const OperatorSum& h, const OperatorSum& o,
                           const std::vector<int>& k_grid);

struct PairBound {
  /** min_k (||ad_H^k O|| / omega^k)^2 */
  double bound;
  int best_k;
  /** 2 / (lambda e) */
  double kappa;
  /** sup_k ||ad_H^k O|| / (lambda^k k!) */
  double growth_constant;
};

PairBound per_pair_exponential_bound(const AdjointNorms& norms, double omega,
                                     double lambda);
PairBound per_pair_exponential_bound(const OperatorSum& h, const OperatorSum& o,
                                     double omega, const std::vector<int>& k_grid,
                                     double lambda);

/**
 * Bound on |sigma_ij| over a bin (omega, omega + d]:
 * pi sqrt(B_i B_j) with B the per-operator bound at omega.
 */
double pair_bin_bound(double b_i, double b_j);

struct TotalRateBound {
  /** N exp(-(1 - D/alpha) kappa omega), constant prefactor taken as 1. */
  double value;
  double r_star;
  double long_range_part;
  double short_range_part;
};

TotalRateBound total_rate_bound(int n, double alpha, int dimension, double kappa,
                                double omega);

struct ResponseResult {
  std::vector<double> edges;
  std::vector<int> sites;
  /** Indexed [(a * n_ops + b) * n_bins + bin] for operators a, b. */
  std::vector<Complex> sigma;
  std::vector<double> pair_bound;
  std::vector<double> operator_bound;
  double kappa = 0.0;
  std::vector<double> total_bound;

  int n_ops() const { return static_cast<int>(sites.size()); }
  int n_bins() const { return static_cast<int>(edges.size()) - 1; }
  std::size_t index(int a, int b, int bin) const {
    return (std::size_t(a) * n_ops() + b) * n_bins() + bin;
  }
};

/**
 * Binned absorptive response: each transition n -> m deposits
 * pi (p_n - p_m) (O_i)_nm (O_j)_mn at frequency E_m - E_n.
 */
ResponseResult response_binned(const OperatorSum& h0, const ResponseConfig& config,
                               const Lattice& lattice, double alpha);

/** Serial reference for the bin accumulation. */
ResponseResult response_binned_serial(const OperatorSum& h0,
                                      const ResponseConfig& config,
                                      const Lattice& lattice, double alpha);

struct GaussianWindowCheck {
  /** pi sum w_nm exp(-((nu_nm - omega)/delta)^2) */
  Complex spectral;
  /** (sqrt(pi)/2) delta int dt e^{-(t/dt)^2} e^{i omega t} <[O_i(t), O_j]>, dt = 2/delta */
  Complex time_domain;
};

GaussianWindowCheck gaussian_window_check(const OperatorSum& h0, const OperatorSum& oi,
                                          const OperatorSum& oj, double beta,
                                          double omega, double delta_omega,
                                          const std::vector<int>& sites);

}  // namespace floq
