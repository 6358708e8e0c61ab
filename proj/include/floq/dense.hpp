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
#include <vector>

#include "floq/fourier.hpp"

namespace floq {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct DenseOperator {
  Matrix matrix;
  /** sites[0] is the most significant tensor factor. */
  std::vector<int> sites;

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

/** Ordered list 0..n-1. */
std::vector<int> all_sites(int n);

DenseOperator to_matrix(const OperatorSum& a, const std::vector<int>& sites);
Matrix to_matrix(std::span<const Term> terms, const std::vector<int>& sites);

/** Largest singular value; Hermitian and anti-Hermitian inputs use eigenvalues. */
double spectral_norm(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = 1e-10);
double unitarity_defect(const Matrix& u);

struct Spectrum {
  RealVector energies;
  Matrix vectors;
};

Spectrum diagonalize(const Matrix& h);

/** exp(-i t H) for Hermitian H. */
Matrix expm_hermitian(const Matrix& h, double t);
Matrix expm_from_spectrum(const Spectrum& s, double t);

/** Gibbs state with the ground energy shifted out before exponentiating. */
Matrix thermal_state(const Matrix& h, double beta);
DenseOperator thermal_state(const DenseOperator& h, double beta);

/** Dense image of a FourierOperator, harmonic by harmonic. */
struct DenseFourier {
  double omega;
  std::vector<std::pair<int, Matrix>> harmonics;

  DenseFourier(const FourierOperator& f, const std::vector<int>& sites);
  Matrix at(double t) const;
};

struct FloquetPropagator {
  DenseOperator u;
  double period;
  int stepper_order = 4;
  int steps_per_period;
  double convergence_estimate;
};

inline constexpr double kPropagatorTolerance = 1e-8;
inline constexpr int kPropagatorStepCap = 1 << 15;

/**
 * One period of the time-ordered exponential with a fourth-order
 * commutator-free stepper. Steps double until the Frobenius distance to the
 * previous resolution is at most kPropagatorTolerance.
 */
FloquetPropagator floquet_propagator(const FourierOperator& h,
                                     const std::vector<int>& sites,
                                     int steps = 8);

/** Fixed-step propagator on [t0, t1]. */
Matrix propagate(const DenseFourier& h, double t0, double t1, int steps);

/** Adaptive propagator on [t0, t1], same tolerance rule as above. */
Matrix propagate_adaptive(const DenseFourier& h, double t0, double t1,
                          int steps = 8);

/** U(t) from 0: whole periods through U_F, the remainder stepped. */
Matrix evolution_operator(const FourierOperator& h,
                          const std::vector<int>& sites, double t);

/** U^dagger A U for the evolution generated by H over [0, t]. */
DenseOperator heisenberg_evolve(const OperatorSum& h, const DenseOperator& a,
                                double t);
DenseOperator heisenberg_evolve(const FourierOperator& h,
                                const DenseOperator& a, double t);

/**
 * Eigen-decomposition of a unitary via complex Schur form:
 * U = Z diag(phases) Z^dagger.
 */
struct UnitarySpectrum {
  Eigen::VectorXcd phases;
  Matrix vectors;
};

UnitarySpectrum diagonalize_unitary(const Matrix& u);

}  // namespace floq
