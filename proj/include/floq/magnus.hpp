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

#include <map>
#include <optional>
#include <span>
#include <tuple>

#include "floq/dense.hpp"
#include "floq/fourier.hpp"

namespace floq {

struct MagnusConfig {
  /** nullopt selects q_max from omega_*. */
  std::optional<int> q_max;
  double kappa = 1.0;
  double c = 10.0;
  double period = 0.0;
  /** 0 selects lattice_constants(lattice, alpha).lambda. */
  double lambda = 0.0;
  /** Highest G_q kept in V'; defaults to q_max + 2. */
  std::optional<int> report_orders;
};

struct QmaxSelection {
  int q_max;
  double omega_star;
};

/** omega_* = e^(1 - kappa) / (c T lambda), q_max = max(1, floor(omega_*)). */
QmaxSelection select_qmax(const MagnusConfig& config);

/**
 * Nested adjoints sum_{i_1+..+i_k = s} ad_{Omega_i1} .. ad_{Omega_ik} X,
 * memoised over (source, k, s). Source 0 is H; source m >= 1 is
 * d/dt Omega_m. Omega_j is zero beyond the truncation order.
 */
class GqBuilder {
 public:
  GqBuilder(FourierOperator h, int truncation);

  /** Omega_j for 1 <= j <= truncation, set in increasing j. */
  void set_omega(int j, FourierOperator omega_j);
  int known_omegas() const { return static_cast<int>(omegas_.size()); }
  int truncation() const { return truncation_; }

  FourierOperator compute(int q);

 private:
  const FourierOperator& nested(int source, int k, int s);
  const FourierOperator& omega(int j);

  FourierOperator h_;
  int truncation_;
  std::vector<FourierOperator> omegas_;
  std::vector<FourierOperator> omega_dots_;
  std::map<std::tuple<int, int, int>, FourierOperator> memo_;
  FourierOperator zero_;
};

/** G_q from H and Omega_1..Omega_q (zero series beyond the truncation). */
FourierOperator compute_Gq(const FourierOperator& h,
                           std::span<const FourierOperator> omegas, int q);

/** Per-order bookkeeping. */
struct OrderCertificate {
  int q = 0;
  /** T^q q! c^q lambda^q below q_max; C e^(-kappa' q) at and above. */
  double prefactor = 0.0;
  CertificateReport report;
  double local_norm = 0.0;
  /** T^q q! c^q lambda^(q+1) below q_max; lambda e sqrt(q) (T q c lambda / e)^q above. */
  double norm_bound = 0.0;
  bool norm_ok = true;
};

struct MagnusResult {
  int q_max = 0;
  int report_orders = 0;
  double omega_star = 0.0;
  double period = 0.0;
  double lambda = 0.0;
  double c = 0.0;
  double kappa = 0.0;
  double kappa_prime = 0.0;

  std::vector<OperatorSum> hbar_list;
  std::vector<FourierOperator> omega_list;
  std::vector<FourierOperator> g_list;
  OperatorSum h_star;
  FourierOperator v_prime{1.0};

  std::vector<OrderCertificate> certificates;
  double gamma_star = 0.0;
  CertificateReport h_star_certificate;
  /** sup_{q >= q_max} e^(kappa' q) times the certified prefactor of G_q. */
  double tail_prefactor = 0.0;
  /** Largest coefficient of G_q - i dOmega_{q+1}/dt - Hbar_q per order. */
  std::vector<double> identity_residuals;
  /** local norm of V' and the summed per-order bound. */
  double v_prime_local_norm = 0.0;
  double v_prime_bound = 0.0;

  /** Omega(t) = sum_q Omega_q(t). */
  FourierOperator total_omega() const;
};

/** Order-by-order state; advance(q) must be called with q = 0, 1, ... */
class MagnusState {
 public:
  MagnusState(FourierOperator h, int q_max);

  int next_order() const { return static_cast<int>(hbar_.size()); }
  int q_max() const { return builder_.truncation(); }

  /** Appends Hbar_q and Omega_{q+1}; returns the identity residual. */
  double advance(int q);
  FourierOperator compute_Gq(int q) { return builder_.compute(q); }

  const std::vector<OperatorSum>& hbar() const { return hbar_; }
  const std::vector<FourierOperator>& omegas() const { return omegas_; }
  const std::vector<FourierOperator>& g_list() const { return g_; }

 private:
  GqBuilder builder_;
  std::vector<OperatorSum> hbar_;
  std::vector<FourierOperator> omegas_;
  std::vector<FourierOperator> g_;
};

double advance_order(MagnusState& state, int q);

MagnusResult build_effective(const FourierOperator& h, const MagnusConfig& config,
                             const PowerLawSpec& spec, const Lattice& lattice);

/**
 * V'_exact(t) = Q^dag H Q - i Q^dag dQ/dt - H_* with Q = exp(Omega(t)),
 * evaluated densely. Q^dag dQ/dt is taken in the eigenbasis of Omega where
 * the derivative of the exponential is a Hadamard product.
 */
DenseOperator residual_drive_exact(const MagnusResult& result,
                                   const FourierOperator& h, double t,
                                   const std::vector<int>& sites);

/** max over `samples` equally spaced t in one period of ||V'_exact(t)||. */
double max_residual_norm(const MagnusResult& result, const FourierOperator& h,
                         const std::vector<int>& sites, int samples = 32);

}  // namespace floq
