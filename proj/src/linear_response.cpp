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

#include "floq/linear_response.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "floq/errors.hpp"
#include "floq/kernels.hpp"

namespace floq {

AdjointNorms adjoint_norms(const OperatorSum& h, const OperatorSum& o,
                           const std::vector<int>& k_grid) {
  AdjointNorms out;
  std::vector<int> ks = k_grid;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  OperatorSum cur = o;
  int depth = 0;
  for (int k : ks) {
    if (k < 0) throw DomainError("k grid entries must be >= 0");
    while (depth < k) {
      cur = adjoint_power(h, cur, 1);
      ++depth;
    }
    out.k.push_back(k);
    out.norm.push_back(operator_norm(cur, NormMethod::Exact));
  }
  return out;
}

PairBound per_pair_exponential_bound(const AdjointNorms& norms, double omega,
                                     double lambda) {
  if (!(omega > 0.0)) throw DomainError("per-pair bound needs omega > 0");
  if (norms.k.empty()) throw DomainError("empty k grid");
  PairBound out{std::numeric_limits<double>::infinity(), -1,
                2.0 / (lambda * std::numbers::e), 0.0};
  for (std::size_t a = 0; a < norms.k.size(); ++a) {
    const int k = norms.k[a];
    const double ratio = norms.norm[a] / std::pow(omega, k);
    if (ratio * ratio < out.bound) {
      out.bound = ratio * ratio;
      out.best_k = k;
    }
    out.growth_constant = std::max(
        out.growth_constant, norms.norm[a] / (std::pow(lambda, k) * std::tgamma(k + 1.0)));
  }
  return out;
}

PairBound per_pair_exponential_bound(const OperatorSum& h, const OperatorSum& o,
                                     double omega, const std::vector<int>& k_grid,
                                     double lambda) {
  return per_pair_exponential_bound(adjoint_norms(h, o, k_grid), omega, lambda);
}

double pair_bin_bound(double b_i, double b_j) {
  return std::numbers::pi * std::sqrt(b_i * b_j);
}

TotalRateBound total_rate_bound(int n, double alpha, int dimension, double kappa,
                                double omega) {
  if (!(alpha > dimension))
    throw DomainError(fmt::format("total rate bound requires alpha > D (alpha = {}, D = {})",
                                  alpha, dimension));
  if (!(omega > 0.0)) throw DomainError("total rate bound needs omega > 0");
  TotalRateBound out;
  out.value = n * std::exp(-(1.0 - dimension / alpha) * kappa * omega);
  out.r_star = std::exp(kappa * omega / alpha);
  out.long_range_part = n / std::pow(out.r_star, alpha - dimension);
  out.short_range_part = n * std::pow(out.r_star, dimension) * std::exp(-kappa * omega);
  return out;
}

namespace {

struct Prepared {
  std::vector<Matrix> ops;
  RealVector energies;
  RealVector p;
};

Prepared prepare(const OperatorSum& h0, const ResponseConfig& config, int n) {
  if (config.omega_grid.size() < 2) throw DomainError("need at least two bin edges");
  for (std::size_t k = 1; k < config.omega_grid.size(); ++k)
    if (!(config.omega_grid[k] > config.omega_grid[k - 1]))
      throw DomainError("bin edges must be strictly increasing");
  if (config.drive_sites.empty()) throw DomainError("no drive operators given");
  const auto sites = all_sites(n);
  auto spec = diagonalize(to_matrix(h0.terms(), sites));
  Prepared out;
  out.energies = spec.energies;
  const double e0 = spec.energies.minCoeff();
  out.p.resize(spec.energies.size());
  for (Eigen::Index k = 0; k < out.p.size(); ++k)
    out.p(k) = std::exp(-config.beta * (spec.energies(k) - e0));
  out.p /= out.p.sum();
  for (const auto& d : config.drive_sites)
    out.ops.push_back(spec.vectors.adjoint() * to_matrix(d.op.terms(), sites) *
                      spec.vectors);
  return out;
}

ResponseResult finish(const OperatorSum& h0, const ResponseConfig& config,
                      const Lattice& lattice, double alpha, std::vector<Complex> sigma) {
  ResponseResult r;
  r.edges = config.omega_grid;
  for (const auto& d : config.drive_sites) r.sites.push_back(d.site);
  r.sigma = std::move(sigma);
  const double lambda = lattice_constants(lattice, alpha).lambda;
  r.kappa = 2.0 / (lambda * std::numbers::e);
  const int nb = r.n_bins(), no = r.n_ops();
  const double inf = std::numeric_limits<double>::infinity();

  r.operator_bound.assign(std::size_t(no) * nb, inf);
  for (int a = 0; a < no; ++a) {
    auto norms = adjoint_norms(h0, config.drive_sites[a].op, config.k_grid);
    for (int b = 0; b < nb; ++b)
      if (r.edges[b] > 0.0)
        r.operator_bound[std::size_t(a) * nb + b] =
            per_pair_exponential_bound(norms, r.edges[b], lambda).bound;
  }
  r.pair_bound.assign(r.sigma.size(), inf);
  for (int a = 0; a < no; ++a)
    for (int c = 0; c < no; ++c)
      for (int b = 0; b < nb; ++b)
        if (r.edges[b] > 0.0)
          r.pair_bound[r.index(a, c, b)] =
              pair_bin_bound(r.operator_bound[std::size_t(a) * nb + b],
                             r.operator_bound[std::size_t(c) * nb + b]);
  r.total_bound.assign(nb, inf);
  for (int b = 0; b < nb; ++b)
    if (r.edges[b] > 0.0 && alpha > lattice.dimension())
      r.total_bound[b] =
          total_rate_bound(lattice.size(), alpha, lattice.dimension(), r.kappa, r.edges[b]).value;
  return r;
}

}  // namespace

ResponseResult response_binned(const OperatorSum& h0, const ResponseConfig& config,
                               const Lattice& lattice, double alpha) {
  auto prep = prepare(h0, config, lattice.size());
  auto sigma = kernels::omp::response_bins(prep.ops, prep.energies, prep.p, config.omega_grid);
  return finish(h0, config, lattice, alpha, std::move(sigma));
}

ResponseResult response_binned_serial(const OperatorSum& h0,
                                      const ResponseConfig& config,
                                      const Lattice& lattice, double alpha) {
  auto prep = prepare(h0, config, lattice.size());
  auto sigma =
      kernels::serial::response_bins(prep.ops, prep.energies, prep.p, config.omega_grid);
  return finish(h0, config, lattice, alpha, std::move(sigma));
}

GaussianWindowCheck gaussian_window_check(const OperatorSum& h0, const OperatorSum& oi,
                                          const OperatorSum& oj, double beta,
                                          double omega, double delta_omega,
                                          const std::vector<int>& sites) {
  if (!(delta_omega > 0.0)) throw DomainError("window width must be positive");
  const Matrix h = to_matrix(h0.terms(), sites);
  const Matrix a = to_matrix(oi.terms(), sites);
  const Matrix b = to_matrix(oj.terms(), sites);
  auto spec = diagonalize(h);
  const Matrix rho = thermal_state(h, beta);

  GaussianWindowCheck out{0.0, 0.0};
  {
    const Matrix at = spec.vectors.adjoint() * a * spec.vectors;
    const Matrix bt = spec.vectors.adjoint() * b * spec.vectors;
    const RealVector p = (spec.vectors.adjoint() * rho * spec.vectors).diagonal().real();
    for (Eigen::Index n = 0; n < at.rows(); ++n)
      for (Eigen::Index m = 0; m < at.rows(); ++m) {
        const double nu = spec.energies(m) - spec.energies(n);
        out.spectral += std::numbers::pi * (p(n) - p(m)) * at(n, m) * bt(m, n) *
                        std::exp(-std::pow((nu - omega) / delta_omega, 2));
      }
  }
  const double dt_window = 2.0 / delta_omega;
  const double span = 6.5 * dt_window;
  const double width = spec.energies.maxCoeff() - spec.energies.minCoeff();
  const double step = std::numbers::pi / (2.0 * (std::abs(omega) + width + 1.0));
  const int half = static_cast<int>(std::ceil(span / step));
  Complex integral = 0.0;
  for (int s = -half; s <= half; ++s) {
    const double t = s * step;
    const Matrix u = expm_from_spectrum(spec, t);
    const Matrix a_t = u.adjoint() * a * u;
    const Complex corr = (rho * (a_t * b - b * a_t)).trace();
    integral += std::exp(-std::pow(t / dt_window, 2)) * std::exp(Complex(0.0, omega * t)) * corr;
  }
  integral *= step;
  out.time_domain = 0.5 * std::sqrt(std::numbers::pi) * delta_omega * integral;
  return out;
}

}  // namespace floq
