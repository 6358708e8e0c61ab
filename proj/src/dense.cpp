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

#include "floq/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <fmt/format.h>

#include "floq/errors.hpp"
#include "floq/kernels.hpp"

namespace floq {

std::vector<int> all_sites(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

Matrix to_matrix(std::span<const Term> terms, const std::vector<int>& sites) {
  if (static_cast<int>(sites.size()) > kExactGlobalCap)
    throw ResourceError(fmt::format("dense realisation on {} sites exceeds the cap of {}",
                                    sites.size(), kExactGlobalCap));
  std::uint64_t allowed = 0;
  for (int s : sites) {
    if (s < 0 || s >= kMaxSites) throw IndexError(fmt::format("site {} out of range", s));
    allowed |= std::uint64_t(1) << s;
  }
  for (const auto& t : terms)
    if (t.string.support_mask() & ~allowed)
      throw DomainError(fmt::format("term {} not supported on the site list",
                                    t.string.str()));
  Matrix out;
  kernels::omp::fill_matrix(terms, sites, out);
  return out;
}

DenseOperator to_matrix(const OperatorSum& a, const std::vector<int>& sites) {
  return {to_matrix(a.terms(), sites), sites};
}

bool is_hermitian(const Matrix& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.size() == 1) return std::abs(a(0, 0));
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double tol = 1e-13 * scale;
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  if ((a + a.adjoint()).cwiseAbs().maxCoeff() <= tol) {
    Matrix h = Complex(0.0, 1.0) * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Spectrum diagonalize(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw AccuracyError("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix expm_from_spectrum(const Spectrum& s, double t) {
  Eigen::VectorXcd phase(s.energies.size());
  for (Eigen::Index k = 0; k < phase.size(); ++k)
    phase(k) = std::exp(Complex(0.0, -t * s.energies(k)));
  return s.vectors * phase.asDiagonal() * s.vectors.adjoint();
}

Matrix expm_hermitian(const Matrix& h, double t) {
  return expm_from_spectrum(diagonalize(h), t);
}

Matrix thermal_state(const Matrix& h, double beta) {
  auto s = diagonalize(h);
  const double e0 = s.energies.minCoeff();
  RealVector p(s.energies.size());
  for (Eigen::Index k = 0; k < p.size(); ++k)
    p(k) = std::exp(-beta * (s.energies(k) - e0));
  p /= p.sum();
  return s.vectors * p.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

DenseOperator thermal_state(const DenseOperator& h, double beta) {
  return {thermal_state(h.matrix, beta), h.sites};
}

DenseFourier::DenseFourier(const FourierOperator& f, const std::vector<int>& sites)
    : omega(f.omega()) {
  for (const auto& [m, h] : f.harmonics())
    harmonics.emplace_back(m, to_matrix(h.terms(), sites));
  if (harmonics.empty()) {
    const Eigen::Index dim = Eigen::Index(1) << sites.size();
    harmonics.emplace_back(0, Matrix::Zero(dim, dim));
  }
}

Matrix DenseFourier::at(double t) const {
  Matrix out = Matrix::Zero(harmonics.front().second.rows(),
                            harmonics.front().second.cols());
  for (const auto& [m, h] : harmonics) out += std::exp(Complex(0.0, m * omega * t)) * h;
  return out;
}

namespace {

// Fourth-order commutator-free exponential integrator with two exponentials
// per step and Gauss-Legendre sampling of H.
const double kSqrt3 = std::sqrt(3.0);
const double kC1 = 0.5 - kSqrt3 / 6.0;
const double kC2 = 0.5 + kSqrt3 / 6.0;
const double kA1 = 0.25 - kSqrt3 / 6.0;
const double kA2 = 0.25 + kSqrt3 / 6.0;

Matrix cf4_step(const DenseFourier& h, double t, double dt) {
  Matrix h1 = h.at(t + kC1 * dt);
  Matrix h2 = h.at(t + kC2 * dt);
  Matrix first = expm_hermitian(kA2 * h1 + kA1 * h2, dt);
  Matrix second = expm_hermitian(kA1 * h1 + kA2 * h2, dt);
  return second * first;
}

}  // namespace

Matrix propagate(const DenseFourier& h, double t0, double t1, int steps) {
  const Eigen::Index dim = h.harmonics.front().second.rows();
  Matrix u = Matrix::Identity(dim, dim);
  if (t1 == t0) return u;
  const double dt = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) u = cf4_step(h, t0 + s * dt, dt) * u;
  return u;
}

namespace {
struct Adaptive {
  Matrix u;
  int steps;
  double estimate;
};

Adaptive propagate_until_converged(const DenseFourier& h, double t0, double t1,
                                   int steps) {
  steps = std::max(steps, 4);
  Matrix prev = propagate(h, t0, t1, steps);
  for (;;) {
    if (2 * steps > kPropagatorStepCap) {
      throw AccuracyError(
          fmt::format("propagator did not converge with {} steps", steps));
    }
    Matrix next = propagate(h, t0, t1, 2 * steps);
    double est = (next - prev).norm();
    steps *= 2;
    if (est <= kPropagatorTolerance) return {std::move(next), steps, est};
    prev = std::move(next);
  }
}
}  // namespace

Matrix propagate_adaptive(const DenseFourier& h, double t0, double t1, int steps) {
  if (t1 == t0) return propagate(h, t0, t1, 1);
  return propagate_until_converged(h, t0, t1, steps).u;
}

FloquetPropagator floquet_propagator(const FourierOperator& h,
                                     const std::vector<int>& sites, int steps) {
  if (steps < 4) throw DomainError("floquet_propagator needs at least 4 steps");
  DenseFourier dh(h, sites);
  auto r = propagate_until_converged(dh, 0.0, h.period(), steps);
  return {{std::move(r.u), sites}, h.period(), 4, r.steps, r.estimate};
}

Matrix evolution_operator(const FourierOperator& h, const std::vector<int>& sites,
                          double t) {
  if (t < 0.0) throw DomainError("evolution time must be nonnegative");
  const double period = h.period();
  long n = static_cast<long>(std::floor(t / period));
  double rem = t - n * period;
  DenseFourier dh(h, sites);
  const Eigen::Index dim = dh.harmonics.front().second.rows();
  Matrix out = Matrix::Identity(dim, dim);
  if (n > 0) {
    Matrix base = floquet_propagator(h, sites).u.matrix;
    while (n) {
      if (n & 1) out = base * out;
      n >>= 1;
      if (n) base = base * base;
    }
  }
  if (rem > 0.0) out = propagate_adaptive(dh, 0.0, rem) * out;
  return out;
}

DenseOperator heisenberg_evolve(const OperatorSum& h, const DenseOperator& a,
                                double t) {
  Matrix u = expm_hermitian(to_matrix(h.terms(), a.sites), t);
  return {u.adjoint() * a.matrix * u, a.sites};
}

DenseOperator heisenberg_evolve(const FourierOperator& h, const DenseOperator& a,
                                double t) {
  Matrix u = evolution_operator(h, a.sites, t);
  return {u.adjoint() * a.matrix * u, a.sites};
}

UnitarySpectrum diagonalize_unitary(const Matrix& u) {
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw AccuracyError("Schur decomposition failed");
  return {schur.matrixT().diagonal(), schur.matrixU()};
}

}  // namespace floq
