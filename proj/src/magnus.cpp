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

#include "floq/magnus.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "floq/errors.hpp"

namespace floq {

QmaxSelection select_qmax(const MagnusConfig& config) {
  if (!(config.kappa > std::numbers::ln2))
    throw DomainError(fmt::format("kappa must exceed ln 2 (got {})", config.kappa));
  if (!(config.c > 0.0) || !(config.period > 0.0) || !(config.lambda > 0.0))
    throw DomainError("select_qmax needs c, T and lambda positive");
  double omega_star =
      std::exp(1.0 - config.kappa) / (config.c * config.period * config.lambda);
  // Guard against omega_* landing a hair below an integer through rounding.
  int q = static_cast<int>(std::floor(omega_star * (1.0 + 1e-12)));
  return {std::max(1, q), omega_star};
}

GqBuilder::GqBuilder(FourierOperator h, int truncation)
    : h_(std::move(h)), truncation_(truncation), zero_(h_.omega()) {
  if (truncation < 0) throw DomainError("truncation order must be >= 0");
}

void GqBuilder::set_omega(int j, FourierOperator omega_j) {
  if (j != known_omegas() + 1 || j > truncation_)
    throw DomainError(fmt::format("Omega_{} set out of order", j));
  omega_dots_.push_back(omega_j.derivative());
  omegas_.push_back(std::move(omega_j));
}

const FourierOperator& GqBuilder::omega(int j) {
  if (j > truncation_) return zero_;
  if (j > known_omegas())
    throw DomainError(fmt::format("G_q needs Omega_{} which is not yet known", j));
  return omegas_[j - 1];
}

const FourierOperator& GqBuilder::nested(int source, int k, int s) {
  if (k == 0) {
    if (s != 0) return zero_;
    if (source == 0) return h_;
    if (source > truncation_) return zero_;
    omega(source);
    return omega_dots_[source - 1];
  }
  if (s < k) return zero_;
  auto key = std::make_tuple(source, k, s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  FourierOperator acc(h_.omega());
  for (int i = 1; i <= s - k + 1; ++i) {
    const auto& om = omega(i);
    if (om.is_zero()) continue;
    const auto& inner = nested(source, k - 1, s - i);
    if (inner.is_zero()) continue;
    acc += fourier_commutator(om, inner);
  }
  return memo_.emplace(key, std::move(acc)).first->second;
}

FourierOperator GqBuilder::compute(int q) {
  if (q < 0) throw DomainError("G_q needs q >= 0");
  if (q == 0) return h_;
  FourierOperator g(h_.omega());
  double fact = 1.0;  // k!
  for (int k = 1; k <= q; ++k) {
    fact *= k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const auto& first = nested(0, k, q);
    if (!first.is_zero()) g += first * Complex(sign / fact);
    // i (-1)^(k+1) / (k+1)! sum_m ad^k over compositions of q+1-m acting on dOmega_m
    const Complex w(0.0, -sign / (fact * (k + 1)));
    for (int m = 1; m <= q + 1 - k; ++m) {
      if (m > truncation_) break;
      const auto& second = nested(m, k, q + 1 - m);
      if (!second.is_zero()) g += second * w;
    }
  }
  return g;
}

FourierOperator compute_Gq(const FourierOperator& h,
                           std::span<const FourierOperator> omegas, int q) {
  if (q < 0) throw DomainError("G_q needs q >= 0");
  GqBuilder b(h, static_cast<int>(omegas.size()));
  for (std::size_t j = 0; j < omegas.size(); ++j)
    b.set_omega(static_cast<int>(j) + 1, omegas[j]);
  return b.compute(q);
}

FourierOperator MagnusResult::total_omega() const {
  FourierOperator out(v_prime.omega());
  for (const auto& o : omega_list) out += o;
  return out;
}

MagnusState::MagnusState(FourierOperator h, int q_max) : builder_(std::move(h), q_max) {
  if (q_max < 1) throw DomainError("q_max must be >= 1");
}

double MagnusState::advance(int q) {
  if (q != next_order())
    throw DomainError(fmt::format("advance_order({}) called at order {}", q, next_order()));
  if (q >= q_max())
    throw DomainError(fmt::format("advance_order({}) beyond q_max = {}", q, q_max()));
  auto g = builder_.compute(q);
  OperatorSum hbar = g.time_average();
  if (!hbar.is_hermitian(1e-9))
    throw AccuracyError(fmt::format("Hbar_{} is not Hermitian", q));

  FourierOperator fluct = g;
  fluct.set_harmonic(0, OperatorSum());
  FourierOperator om = antiderivative_zero_start(fluct) * Complex(0.0, -1.0);
  if (!om.is_anti_hermitian(1e-9))
    throw AccuracyError(fmt::format("Omega_{} is not anti-Hermitian", q + 1));

  FourierOperator residual = g - om.derivative() * Complex(0.0, 1.0);
  residual.set_harmonic(0, residual.harmonic(0) - hbar);

  builder_.set_omega(q + 1, om);
  hbar_.push_back(std::move(hbar));
  omegas_.push_back(std::move(om));
  g_.push_back(std::move(g));
  return residual.max_abs_coefficient();
}

double advance_order(MagnusState& state, int q) { return state.advance(q); }

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_certificate(const CertificateReport& rep, const char* what) {
  if (!rep.pass)
    throw DomainError(fmt::format(
        "{} fails the power-law certificate (worst pair ({}, {}) ratio {:.6g}, "
        "worst single site {:.6g}, max support {})",
        what, rep.worst_i, rep.worst_j, rep.worst_ratio, rep.worst_single_site,
        rep.max_support));
}

}  // namespace

MagnusResult build_effective(const FourierOperator& h, const MagnusConfig& config,
                             const PowerLawSpec& spec, const Lattice& lattice) {
  if (!h.is_hermitian(1e-12)) throw DomainError("H(t) must be Hermitian");
  {
    auto h0 = FourierOperator::constant(h.omega(), h.harmonic(0));
    auto v = h - h0;
    require_certificate(powerlaw_certificate(h.harmonic(0), spec, 1.0, lattice), "H0");
    auto vg = fourier_support_groups(v);
    require_certificate(powerlaw_certificate(vg, spec, 1.0, lattice), "V");
  }

  MagnusConfig cfg = config;
  if (!(cfg.period > 0.0)) cfg.period = h.period();
  if (std::abs(cfg.period - h.period()) > 1e-12 * cfg.period)
    throw DomainError("config period does not match the drive frequency");
  if (!(cfg.lambda > 0.0)) cfg.lambda = lattice_constants(lattice, spec.alpha).lambda;
  auto sel = select_qmax(cfg);

  MagnusResult r;
  r.q_max = cfg.q_max.value_or(sel.q_max);
  if (r.q_max < 1) throw DomainError("q_max must be >= 1");
  r.report_orders = cfg.report_orders.value_or(r.q_max + 2);
  if (r.report_orders < r.q_max)
    throw DomainError("report_orders must be >= q_max");
  r.omega_star = sel.omega_star;
  r.period = cfg.period;
  r.lambda = cfg.lambda;
  r.c = cfg.c;
  r.kappa = cfg.kappa;
  r.kappa_prime = cfg.kappa - std::numbers::ln2 - 1.0 / cfg.c;
  r.v_prime = FourierOperator(h.omega());

  MagnusState state(h, r.q_max);
  for (int q = 0; q < r.q_max; ++q) r.identity_residuals.push_back(state.advance(q));
  r.hbar_list = state.hbar();
  r.omega_list = state.omegas();
  r.g_list = state.g_list();
  for (int q = r.q_max; q <= r.report_orders; ++q) {
    r.g_list.push_back(state.compute_Gq(q));
    r.v_prime += r.g_list.back();
  }
  for (const auto& hb : r.hbar_list) r.h_star += hb;

  const double tcl = r.period * r.c * r.lambda;
  for (int q = 0; q <= r.report_orders; ++q) {
    OrderCertificate oc;
    oc.q = q;
    oc.prefactor = std::pow(tcl, q) * factorial(q);
    PowerLawSpec sq = spec;
    sq.k = spec.k * (q + 1);
    auto groups = fourier_support_groups(r.g_list[q]);
    oc.report = powerlaw_certificate(groups, sq, oc.prefactor, lattice);
    oc.local_norm = local_norm_report(groups).value;
    oc.norm_bound = oc.prefactor * r.lambda;
    oc.norm_ok = oc.local_norm <= oc.norm_bound * (1.0 + 1e-10);
    if (q >= r.q_max) {
      r.tail_prefactor = std::max(
          r.tail_prefactor, std::exp(r.kappa_prime * q) * oc.report.required_prefactor);
      r.v_prime_bound += r.lambda * std::numbers::e * std::sqrt(double(q)) *
                         std::pow(tcl * q / std::numbers::e, q);
    }
    r.certificates.push_back(oc);
  }
  r.v_prime_local_norm = fourier_local_norm(r.v_prime);
  for (int q = 0; q < r.q_max; ++q) r.gamma_star += r.certificates[q].prefactor;
  PowerLawSpec sstar = spec;
  sstar.k = spec.k * r.q_max;
  r.h_star_certificate = powerlaw_certificate(r.h_star, sstar, r.gamma_star, lattice);
  return r;
}

namespace {

struct ResidualEvaluator {
  DenseFourier h;
  DenseFourier omega;
  DenseFourier omega_dot;
  Matrix h_star;

  ResidualEvaluator(const MagnusResult& r, const FourierOperator& hf,
                    const std::vector<int>& sites)
      : h(hf, sites),
        omega(r.total_omega(), sites),
        omega_dot(r.total_omega().derivative(), sites),
        h_star(to_matrix(r.h_star.terms(), sites)) {}

  Matrix at(double t) const {
    const Complex I(0.0, 1.0);
    Matrix k = -I * omega.at(t);
    k = 0.5 * (k + k.adjoint()).eval();
    auto spec = diagonalize(k);
    const auto& v = spec.vectors;
    const auto& lam = spec.energies;
    const Eigen::Index n = lam.size();

    Matrix ht = v.adjoint() * h.at(t) * v;
    Matrix od = v.adjoint() * omega_dot.at(t) * v;
    Matrix out(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      for (Eigen::Index row = 0; row < n; ++row) {
        const double d = lam(row) - lam(col);
        Complex phi;
        if (std::abs(d) < 1e-6)
          phi = Complex(1.0 - d * d / 6.0, -d / 2.0);
        else
          phi = (1.0 - std::exp(Complex(0.0, -d))) / (I * d);
        out(row, col) = std::exp(Complex(0.0, -d)) * ht(row, col) - I * od(row, col) * phi;
      }
    }
    Matrix lab = v * out * v.adjoint();
    return lab - h_star;
  }
};

}  // namespace

DenseOperator residual_drive_exact(const MagnusResult& result,
                                   const FourierOperator& h, double t,
                                   const std::vector<int>& sites) {
  ResidualEvaluator ev(result, h, sites);
  return {ev.at(t), sites};
}

double max_residual_norm(const MagnusResult& result, const FourierOperator& h,
                         const std::vector<int>& sites, int samples) {
  ResidualEvaluator ev(result, h, sites);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    Matrix m = ev.at(result.period * s / samples);
    m = 0.5 * (m + m.adjoint()).eval();
    best = std::max(best, spectral_norm(m));
  }
  return best;
}

}  // namespace floq
