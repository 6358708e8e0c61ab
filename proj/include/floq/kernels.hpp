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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "floq/pauli.hpp"

/**
 * Hot loops in two flavours. serial:: is the plain reference used by the
 * tests; omp:: is what the library calls. The omp:: versions partition work
 * into fixed-size blocks and reduce in block order, so their output does not
 * depend on the thread count.
 */
namespace floq::kernels {

using TermSpan = std::span<const Term>;

enum class ProductMode { Product, Commutator };

/** Canonical terms of A*B (or [A, B]). */
namespace serial {
std::vector<Term> product(TermSpan a, TermSpan b, ProductMode mode);
void fill_matrix(TermSpan terms, const std::vector<int>& sites,
                 Eigen::MatrixXcd& out);
std::vector<double> group_norms(const std::vector<std::vector<Term>>& groups);
/**
 * Spectral response bins for every ordered operator pair; ops are in the
 * energy eigenbasis, p the thermal weights, bins (edges[b], edges[b+1]].
 */
std::vector<Complex> response_bins(const std::vector<Eigen::MatrixXcd>& ops,
                                   const Eigen::VectorXd& energies,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& edges);
}  // namespace serial

namespace omp {
inline constexpr std::size_t kProductBlock = 16;
std::vector<Term> product(TermSpan a, TermSpan b, ProductMode mode);
void fill_matrix(TermSpan terms, const std::vector<int>& sites,
                 Eigen::MatrixXcd& out);
std::vector<double> group_norms(const std::vector<std::vector<Term>>& groups);
std::vector<Complex> response_bins(const std::vector<Eigen::MatrixXcd>& ops,
                                   const Eigen::VectorXd& energies,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& edges);
}  // namespace omp

/** Number of OpenMP threads the library will use. */
int thread_count();
void set_thread_count(int n);

}  // namespace floq::kernels
