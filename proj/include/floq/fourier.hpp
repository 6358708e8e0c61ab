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

#include "floq/pauli.hpp"

namespace floq {

/**
 * F(t) = sum_m exp(i m omega t) F_m with OperatorSum coefficients. Only
 * nonzero harmonics are stored.
 */
class FourierOperator {
 public:
  explicit FourierOperator(double omega = 1.0);

  static FourierOperator constant(double omega, OperatorSum h0);
  /** g cos(omega t) O */
  static FourierOperator cosine(double omega, double g, const OperatorSum& o);
  /** g sin(omega t) O */
  static FourierOperator sine(double omega, double g, const OperatorSum& o);

  double omega() const { return omega_; }
  double period() const;

  const std::map<int, OperatorSum>& harmonics() const { return harmonics_; }
  const OperatorSum& harmonic(int m) const;
  void set_harmonic(int m, OperatorSum h);
  int max_harmonic() const;
  bool is_zero() const { return harmonics_.empty(); }
  std::size_t term_count() const;

  OperatorSum evaluate_at(double t) const;
  OperatorSum time_average() const { return harmonic(0); }
  FourierOperator derivative() const;
  FourierOperator adjoint() const;

  bool is_hermitian(double tol = OperatorSum::kPruneTolerance) const;
  bool is_anti_hermitian(double tol = OperatorSum::kPruneTolerance) const;
  std::uint64_t support_mask() const;
  double max_abs_coefficient() const;

  FourierOperator& operator+=(const FourierOperator& other);
  FourierOperator& operator-=(const FourierOperator& other);
  FourierOperator& operator*=(Complex c);
  FourierOperator& operator+=(const OperatorSum& constant);

  friend FourierOperator operator+(FourierOperator a, const FourierOperator& b) {
    return a += b;
  }
  friend FourierOperator operator-(FourierOperator a, const FourierOperator& b) {
    return a -= b;
  }
  friend FourierOperator operator*(FourierOperator a, Complex c) {
    return a *= c;
  }
  friend FourierOperator operator*(Complex c, FourierOperator a) {
    return a *= c;
  }

 private:
  void check_omega(const FourierOperator& other) const;

  double omega_;
  std::map<int, OperatorSum> harmonics_;
};

/**
 * G with G(0) = 0 and dG/dt = F. F must have zero mean; harmonic m maps
 * to F_m / (i m omega) and the constant -sum_m F_m / (i m omega) lands in
 * harmonic 0.
 */
FourierOperator antiderivative_zero_start(const FourierOperator& f);

/** result_m = sum_{p+q=m} [F_p, G_q] */
FourierOperator fourier_commutator(const FourierOperator& f,
                                   const FourierOperator& g);

/**
 * Support groups of F with norms bounded by sum_m ||(F_m)_X||, which
 * dominates sup_t ||F_X(t)||.
 */
std::vector<SupportGroup> fourier_support_groups(const FourierOperator& f);
double fourier_local_norm(const FourierOperator& f);

}  // namespace floq
