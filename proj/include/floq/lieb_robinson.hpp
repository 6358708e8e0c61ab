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

#include <functional>
#include <optional>
#include <string_view>

#include "floq/dense.hpp"
#include "floq/lattice.hpp"

namespace floq {

enum class BoundKind {
  HK,
  Gong,
  GongNoY,
  GongNoYNoX,
  TranKBody,
  TranR0Const,
  Else,
  Conjectured
};

inline constexpr BoundKind kAllBoundKinds[] = {
    BoundKind::HK,        BoundKind::Gong,        BoundKind::GongNoY,
    BoundKind::GongNoYNoX, BoundKind::TranKBody,  BoundKind::TranR0Const,
    BoundKind::Else,      BoundKind::Conjectured};

std::string_view bound_kind_name(BoundKind kind);
BoundKind bound_kind_from_name(std::string_view name);
/** Only the conjectured form is not a theorem. */
inline bool is_conjectural(BoundKind kind) { return kind == BoundKind::Conjectured; }

struct BoundParams {
  BoundKind kind = BoundKind::HK;
  double alpha = 0.0;
  int dimension = 1;
  double C = 1.0;
  double v = 0.0;
  double mu = 0.5;
  double xi = 0.5;
  double sigma = 0.5;
  double beta_cone = 1.0;
  double r0 = 0.0;
  double card_x = 1.0;
  double card_y = 1.0;
  double phi = 1.0;

  /** Throws DomainError naming the violated constraint. */
  void validate() const;
  bool applicable() const;

  /**
   * Constants derived from the lattice for the source X and target Y.
   * HK: C = 2/rho, v = 2 lambda0 rho with rho = sup_ij (J^2)_ij / J_ij.
   * Gong: C = 1/(6 lambda0), v = 24 lambda0^2. The Y-free variants absorb the
   * lattice sums over Y; the Tran forms inherit their constant through the
   * unit time-slice transform; Else reuses the Gong pair (C, v).
   */
  static BoundParams from_lattice_constants(BoundKind kind, const Lattice& lattice,
                                            double alpha, const SiteSet& x,
                                            const SiteSet& y, double mu = 0.5,
                                            double xi = 0.5, double sigma = 0.5);
};

double eval_bound(const BoundParams& p, double t, double r);

using BoundFunction = std::function<double(double t, double r)>;

/** 2 phi_max (t/tau) f(tau, xi r tau / t). Requires t >= tau > t/r and xi r tau/t >= 1. */
double time_slice_transform(const BoundFunction& base, double phi_max, double t,
                            double r, double tau, double xi);

/** Minimum of the transform over 64 log-spaced tau in (t/r, t]; nullopt if none valid. */
std::optional<double> time_slice_minimum(const BoundFunction& base, double phi_max,
                                         double t, double r, double xi);

struct HkSeries {
  /** bracket_k: exhaustive sum over overlapping support chains, k = 1..k_max. */
  std::vector<double> chain_sums;
  /** sum_{i in X, j in Y} lambda^k J^k(i, j), k = 1..k_max. */
  std::vector<double> convolution_sums;
  /** 2 ||A|| ||B|| sum_k (2t)^k / k! times the two sequences above. */
  double series_value = 0.0;
  double convolution_value = 0.0;
};

/** (J^k)(i, j) with J_ii = 1 and J_ij = d_ij^-alpha. */
double hopping_convolution(const Lattice& lattice, double alpha, int k, int i, int j);

/** Exhaustive Hastings-Koma partial sums; at most 6 sites and k_max <= 4. */
HkSeries hk_series_oracle(const OperatorSum& h, const Lattice& lattice, double alpha,
                          const SiteSet& x, const SiteSet& y, double t, int k_max);

struct ConePoint {
  double t;
  double r;
  double value;
};

struct ConeSeries {
  std::vector<ConePoint> grid;
};

/**
 * ||[A(t), B]|| on the listed times; A, B act on sites 0..n-1 of the system
 * realised by `sites`.
 */
ConeSeries measure_commutator(const OperatorSum& h, const OperatorSum& a,
                              const OperatorSum& b, const std::vector<double>& times,
                              const std::vector<int>& sites);
ConeSeries measure_commutator(const FourierOperator& h, const OperatorSum& a,
                              const OperatorSum& b, const std::vector<double>& times,
                              const std::vector<int>& sites);

/**
 * Batch form for one evolution and several targets: B_r for every r in
 * `targets`, sharing the spectral decomposition of H.
 */
ConeSeries measure_light_cone(const OperatorSum& h, const OperatorSum& a,
                              const std::vector<std::pair<double, OperatorSum>>& targets,
                              const std::vector<double>& times,
                              const std::vector<int>& sites);

struct ContourPoint {
  double r;
  double t_star;
};

/** First crossing of the threshold per r, linearly interpolated. */
std::vector<ContourPoint> light_cone_contour(const ConeSeries& series, double threshold);

}  // namespace floq
