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
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "floq/lattice.hpp"

namespace floq {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/** Maximum number of sites a PauliString can address. */
inline constexpr int kMaxSites = 64;

/**
 * Tensor product of single-site Paulis in symplectic form: bit s of x marks
 * an X or Y on site s, bit s of z marks a Z or Y.
 */
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::uint64_t x, std::uint64_t z) : x_(x), z_(z) {}
  PauliString(const std::map<int, Pauli>& letters);

  static PauliString single(int site, Pauli p);

  Pauli at(int site) const;
  void set(int site, Pauli p);

  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  std::uint64_t support_mask() const { return x_ | z_; }
  std::vector<int> support() const;
  int weight() const { return std::popcount(support_mask()); }
  bool is_identity() const { return support_mask() == 0; }

  bool commutes_with(const PauliString& other) const {
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
  }

  /** e.g. "X0 Y3"; "I" for the identity. */
  std::string str() const;

  auto operator<=>(const PauliString&) const = default;

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/** a * b = i^phase * string */
struct PauliProduct {
  int phase;
  PauliString string;
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

/** i^k for integer k. */
Complex i_pow(int k);

struct Term {
  PauliString string;
  Complex coefficient;
};

/**
 * Sum of weighted Pauli strings in canonical form: sorted by string,
 * unique strings, coefficients with magnitude below kPruneTolerance dropped.
 */
class OperatorSum {
 public:
  static constexpr double kPruneTolerance = 1e-12;

  OperatorSum() = default;
  explicit OperatorSum(std::vector<Term> terms);

  static OperatorSum identity(Complex c = 1.0);
  static OperatorSum single(int site, Pauli p, Complex c = 1.0);
  static OperatorSum from_string(const PauliString& s, Complex c = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(const PauliString& s) const;
  std::uint64_t support_mask() const;
  double max_abs_coefficient() const;
  double coefficient_l1() const;

  OperatorSum adjoint() const;
  bool is_hermitian(double tol = kPruneTolerance) const;
  bool is_anti_hermitian(double tol = kPruneTolerance) const;

  OperatorSum& operator+=(const OperatorSum& other);
  OperatorSum& operator-=(const OperatorSum& other);
  OperatorSum& operator*=(Complex c);

  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) {
    return a += b;
  }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) {
    return a -= b;
  }
  friend OperatorSum operator*(OperatorSum a, Complex c) { return a *= c; }
  friend OperatorSum operator*(Complex c, OperatorSum a) { return a *= c; }
  friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

  /** Largest coefficient difference; the distance used by the tests. */
  friend double max_abs_difference(const OperatorSum& a, const OperatorSum& b);

 private:
  struct Canonical {};
  OperatorSum(Canonical, std::vector<Term> terms) : terms_(std::move(terms)) {}

  std::vector<Term> terms_;
};

/** Sort, merge equal strings and prune, in a fixed order. */
void canonicalize(std::vector<Term>& terms,
                  double prune = OperatorSum::kPruneTolerance);

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

inline constexpr std::size_t kDefaultTermCap = std::size_t(1) << 22;

/** ad_H^k O; ResourceError once an intermediate exceeds term_cap terms. */
OperatorSum adjoint_power(const OperatorSum& h, const OperatorSum& o, int k,
                          std::size_t term_cap = kDefaultTermCap);

enum class NormMethod { Exact, Upper };

inline constexpr int kExactSupportCap = 8;
inline constexpr int kExactGlobalCap = 14;

/** Exact needs a joint support of at most kExactGlobalCap sites. */
double operator_norm(const OperatorSum& a, NormMethod method = NormMethod::Exact);

/** Terms sharing one support set X, i.e. the h_X of the decomposition. */
struct SupportGroup {
  std::uint64_t support;
  double norm;
  bool exact;
};

std::vector<SupportGroup> support_groups(const OperatorSum& h);

struct LocalNorm {
  double value;
  bool exact;
};

LocalNorm local_norm_report(std::span<const SupportGroup> groups);
double local_norm(const OperatorSum& h);

struct PowerLawSpec {
  double alpha;
  double eta = 1.0;
  int dimension = 1;
  int k = 1;
};

struct CertificateReport {
  bool pass = true;
  double worst_ratio = 0.0;
  int worst_i = -1;
  int worst_j = -1;
  /** max_i ||h_{i}|| / (prefactor eta) */
  double worst_single_site = 0.0;
  int worst_site = -1;
  int max_support = 0;
  int support_bound = 0;
  bool exact_norms = true;
  /** Smallest prefactor for which the ratio checks would pass. */
  double required_prefactor = 0.0;
};

/**
 * Checks H in prefactor * H_alpha^(k): every pair sum
 * sum_{X contains i,j} ||h_X|| <= prefactor eta / d_ij^alpha, single-site
 * terms bounded by prefactor eta, and supports of at most k + 1 sites.
 */
CertificateReport powerlaw_certificate(const OperatorSum& h,
                                       const PowerLawSpec& spec,
                                       double prefactor,
                                       const Lattice& lattice);

CertificateReport powerlaw_certificate(std::span<const SupportGroup> groups,
                                       const PowerLawSpec& spec,
                                       double prefactor,
                                       const Lattice& lattice);

}  // namespace floq
