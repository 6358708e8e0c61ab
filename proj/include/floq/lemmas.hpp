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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "floq/lattice.hpp"
#include "floq/pauli.hpp"

namespace floq {

using BigInt = boost::multiprecision::cpp_int;

struct LemmaReport {
  std::string lemma;
  /** "q=3 k=2 zeros=0" style parameter point */
  std::string point;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct FactorialSum {
  BigInt exact;
  BigInt bound;
};

/**
 * Sum over compositions i_1 + ... + i_k = q of prod i_j!, parts >= 1 or >= 0.
 * Bounds: q!/(k-1)! for positive parts, 2^k q! with zeros allowed.
 */
FactorialSum factorial_composition_sum(int q, int k, bool allow_zero);

/** Same sum by explicit enumeration of every composition; small q only. */
BigInt factorial_composition_enumerate(int q, int k, bool allow_zero);

/** sum over positive compositions of q0 of prod (i_j - 1)!, bound 2^k (q0 - k)! */
FactorialSum factorial_composition_corollary(int q0, int k);

struct RealPair {
  double exact;
  double bound;
};

/** sum_{k=1}^{q0} 2^k q0^k c^-k (q0-k)! / (q0! k!) against (e/sqrt(2 pi))(e^{2e/c} - 1) */
RealPair c1_sum(int q0, double c);

/** sum_{r > r_*} r^{D-1} e^{-r^eta} against (2/eta) 2^{D/eta} Gamma(D/eta) r_*^D e^{-r_*^eta} */
RealPair tail_sum(double r_star, int dimension, double eta);

/** int_{x_*}^inf x^beta e^-x dx against 2^beta beta! x_*^beta e^{-x_*} */
RealPair tail_inner_inequality(int beta, double x_star);

struct ClosureSpec {
  double prefactor;
  int k;
};

/**
 * Certificate of [H1, H2] at prefactor a b lambda max(k1, k2) and class index
 * k1 + k2. Both inputs must carry their own certificates.
 */
LemmaReport adjoint_closure_check(const OperatorSum& h1, ClosureSpec s1,
                                  const OperatorSum& h2, ClosureSpec s2,
                                  const Lattice& lattice, double alpha);

/**
 * Random operator in 1 * H_alpha^(1): one two-site Pauli term per pair with
 * |c| <= d^-alpha and single-site terms of norm <= 1.
 */
OperatorSum random_powerlaw_operator(const Lattice& lattice, double alpha,
                                     std::uint64_t seed);

/** Closure check on `count` seeded random pairs. */
std::vector<LemmaReport> run_closure_suite(const Lattice& lattice, double alpha, int count,
                                           std::uint64_t seed);

/** Every grid point of the composition, Stirling and tail suites. */
std::vector<LemmaReport> run_lemma_suite();

}  // namespace floq
