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

#include "floq/heating.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>
#include <omp.h>

#include "floq/errors.hpp"

namespace floq {

namespace {

// phase^n on the unit circle without accumulated modulus drift
Complex unit_power(Complex phase, std::int64_t n) {
  return std::polar(1.0, std::fmod(std::arg(phase) * static_cast<double>(n),
                                   2.0 * std::numbers::pi));
}

}  // namespace

HeatingTrace run_heating_at(const FourierOperator& h, const OperatorSum& h0,
                            double beta, const std::vector<std::int64_t>& periods,
                            const std::vector<int>& sites) {
  if (periods.empty()) throw DomainError("empty period grid");
  for (std::size_t k = 0; k < periods.size(); ++k) {
    if (periods[k] < 0) throw DomainError("period counts must be >= 0");
    if (k > 0 && periods[k] <= periods[k - 1])
      throw DomainError("period counts must be strictly increasing");
  }
  const Matrix hm = to_matrix(h0.terms(), sites);
  const Matrix rho = thermal_state(hm, beta);
  const auto prop = floquet_propagator(h, sites);
  const auto us = diagonalize_unitary(prop.u.matrix);

  const Matrix r = us.vectors.adjoint() * rho * us.vectors;
  const Matrix ht = (us.vectors.adjoint() * hm * us.vectors).transpose();
  // rt(a, b) * ht(a, b) summed with phases theta_a^n conj(theta_b^n)
  const Matrix w = r.cwiseProduct(ht);

  HeatingTrace out;
  out.periods = periods;
  out.e_initial = (rho * hm).trace().real();
  out.e_infinite = hm.trace().real() / static_cast<double>(hm.rows());
  const Eigen::Index d = w.rows();
  Eigen::VectorXcd ph(d);
  for (std::int64_t n : periods) {
    for (Eigen::Index a = 0; a < d; ++a) ph(a) = unit_power(us.phases(a), n);
    const Complex e = ph.transpose() * w * ph.conjugate();
    out.times.push_back(static_cast<double>(n) * prop.period);
    out.energy.push_back(e.real());
  }
  return out;
}

HeatingTrace run_heating(const FourierOperator& h, const OperatorSum& h0, double beta,
                         std::int64_t n_periods, const std::vector<int>& sites) {
  if (n_periods < 0) throw DomainError("n_periods must be >= 0");
  std::vector<std::int64_t> periods(static_cast<std::size_t>(n_periods) + 1);
  std::iota(periods.begin(), periods.end(), std::int64_t{0});
  return run_heating_at(h, h0, beta, periods, sites);
}

std::vector<std::int64_t> heating_period_grid(std::int64_t dense, std::int64_t n_max,
                                              int per_decade) {
  if (dense < 0 || n_max < dense || per_decade < 1)
    throw DomainError("invalid period grid");
  std::vector<std::int64_t> out(static_cast<std::size_t>(dense) + 1);
  std::iota(out.begin(), out.end(), std::int64_t{0});
  if (n_max > dense) {
    const double lo = std::log10(std::max<double>(1.0, static_cast<double>(dense)));
    const double hi = std::log10(static_cast<double>(n_max));
    const int count = static_cast<int>(std::ceil((hi - lo) * per_decade));
    for (int k = 1; k <= count; ++k) {
      auto n = static_cast<std::int64_t>(
          std::llround(std::pow(10.0, lo + (hi - lo) * k / count)));
      if (n > out.back()) out.push_back(n);
    }
  }
  return out;
}

std::optional<double> heating_time(const HeatingTrace& trace, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DomainError("heating fraction must lie in (0, 1)");
  const double window = trace.e_infinite - trace.e_initial;
  const double scale = std::max({1.0, std::abs(trace.e_initial), std::abs(trace.e_infinite)});
  if (std::abs(window) <= 1e-12 * scale)
    throw DomainError("degenerate energy window: e_initial equals e_infinite");
  for (std::size_t k = 0; k < trace.energy.size(); ++k) {
    const double gained = (trace.energy[k] - trace.e_initial) / window;
    if (gained >= fraction) return trace.times[k];
  }
  return std::nullopt;
}

FourierOperator HeatingExperiment::hamiltonian(double omega) const {
  auto h = FourierOperator::constant(omega, h0);
  if (g != 0.0) h += FourierOperator::cosine(omega, g, drive);
  return h;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("spearman needs two equal-length series of length >= 2");
  const auto rx = average_ranks(x), ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

ScanSummary summarize_scan(std::vector<ScanPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const ScanPoint& a, const ScanPoint& b) { return a.omega < b.omega; });
  ScanSummary out;
  out.points = points;

  std::vector<double> xs, ys;
  for (const auto& p : points)
    if (p.t_star && *p.t_star > 0.0) {
      xs.push_back(p.omega);
      ys.push_back(std::log(*p.t_star));
    }
  if (xs.size() >= 3) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxx += (xs[k] - mx) * (xs[k] - mx);
      sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx > 0.0) {
      ScanFit f;
      f.slope = sxy / sxx;
      f.intercept = my - f.slope * mx;
      double ssr = 0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - f.intercept - f.slope * xs[k];
        ssr += e * e;
      }
      f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
      f.points = static_cast<int>(xs.size());
      out.fit = f;
    }
  }

  std::vector<double> w, lt;
  for (const auto& p : points) {
    w.push_back(p.omega);
    lt.push_back(p.t_star ? std::log(*p.t_star) : std::numeric_limits<double>::infinity());
  }
  out.spearman = points.size() >= 2 ? spearman(w, lt) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

ScanSummary frequency_scan(const HeatingExperiment& base, std::vector<double> omegas) {
  if (omegas.size() < 4) throw DomainError("frequency scan needs at least 4 frequencies");
  std::sort(omegas.begin(), omegas.end());
  if (std::adjacent_find(omegas.begin(), omegas.end()) != omegas.end())
    throw DomainError("duplicate frequencies in scan");
  for (double w : omegas)
    if (!(w > 0.0)) throw DomainError("frequencies must be positive");

  std::vector<ScanPoint> points(omegas.size());
  std::vector<HeatingTrace> traces(omegas.size());
  std::vector<std::string> errors(omegas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    try {
      traces[k] = run_heating_at(base.hamiltonian(omegas[k]), base.h0, base.beta,
                                 base.periods, base.sites);
      points[k] = {omegas[k], heating_time(traces[k], base.fraction)};
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < omegas.size(); ++k)
    if (!errors[k].empty())
      throw Error(fmt::format("heating run at omega = {} failed: {}", omegas[k], errors[k]));
  auto out = summarize_scan(std::move(points));
  out.traces = std::move(traces);
  return out;
}

std::string_view envelope_kind_name(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::Gong: return "gong";
    case EnvelopeKind::Else: return "else";
    case EnvelopeKind::Tran: return "tran";
    case EnvelopeKind::Conjectured: return "conjectured";
  }
  return "?";
}

EnvelopeKind envelope_kind_from_name(std::string_view name) {
  for (auto k : {EnvelopeKind::Gong, EnvelopeKind::Else, EnvelopeKind::Tran,
                 EnvelopeKind::Conjectured})
    if (envelope_kind_name(k) == name) return k;
  throw DomainError(fmt::format("unknown envelope kind '{}'", name));
}

void EnvelopeParams::validate() const {
  const double d = dimension;
  auto fail = [&](std::string_view constraint) {
    throw DomainError(fmt::format("{} envelope requires {} (alpha = {}, D = {})",
                                  envelope_kind_name(kind), constraint, alpha, dimension));
  };
  if (dimension < 1) fail("D >= 1");
  switch (kind) {
    case EnvelopeKind::Gong:
      if (!(alpha > d)) fail("alpha > D");
      if (!(v >= 0.0)) fail("v >= 0");
      break;
    case EnvelopeKind::Else: {
      if (!(alpha > d)) fail("alpha > D");
      const double lo = (d + 1.0) / (alpha - d + 1.0);
      if (!(sigma < 1.0 && sigma > lo))
        fail(fmt::format("1 > sigma > (D+1)/(alpha-D+1) = {:.6g} (sigma = {})", lo, sigma));
      break;
    }
    case EnvelopeKind::Tran:
      if (!(alpha > 3.0 * d)) fail("alpha > 3D");
      break;
    case EnvelopeKind::Conjectured:
      if (!(beta_cone >= 1.0)) fail("beta_cone >= 1");
      break;
  }
}

double envelope_xi(double x) {
  if (!(x > 0.0)) throw DomainError("xi(x) needs x > 0");
  return std::pow(2.0, x) * std::tgamma(x) / x;
}

double envelope_shape(const EnvelopeParams& p, double suppression, double t) {
  p.validate();
  const double d = p.dimension, a = p.alpha;
  switch (p.kind) {
    case EnvelopeKind::Gong:
      return suppression * std::exp(2.0 * d * p.v * t / a);
    case EnvelopeKind::Else: {
      const double x = d / (1.0 - p.sigma);
      return suppression * envelope_xi(x) * std::pow(t, x + 1.0);
    }
    case EnvelopeKind::Tran:
      return suppression * std::pow(t, d * (a - d) / (a - 2.0 * d) + 1.0);
    case EnvelopeKind::Conjectured:
      return suppression * std::pow(t, p.beta_cone * d + 1.0);
  }
  return 0.0;
}

DeltaTrace observable_delta(const MagnusResult& magnus, const FourierOperator& h,
                            const OperatorSum& o, std::int64_t n_periods,
                            const std::vector<int>& sites,
                            const std::vector<EnvelopeParams>& envelopes) {
  if (n_periods < 0) throw DomainError("n_periods must be >= 0");
  const auto support = o.support_mask();
  if (std::popcount(support) != 1) throw DomainError("observable must act on a single site");
  const Matrix om = to_matrix(o.terms(), sites);
  if (std::abs(spectral_norm(om) - 1.0) > 1e-10)
    throw DomainError("observable must have unit norm");
  for (const auto& e : envelopes) e.validate();

  const auto prop = floquet_propagator(h, sites);
  const auto us = diagonalize_unitary(prop.u.matrix);
  const auto hs = diagonalize(to_matrix(magnus.h_star.terms(), sites));
  const double period = prop.period;

  // Work in the Floquet eigenbasis; S maps H_* eigenvectors into it.
  const Matrix ot = us.vectors.adjoint() * om * us.vectors;
  const Matrix os = hs.vectors.adjoint() * om * hs.vectors;
  const Matrix s = us.vectors.adjoint() * hs.vectors;
  const Eigen::Index d = om.rows();

  DeltaTrace out;
  out.periods.resize(static_cast<std::size_t>(n_periods) + 1);
  std::iota(out.periods.begin(), out.periods.end(), std::int64_t{0});
  out.times.resize(out.periods.size());
  out.delta_norm.assign(out.periods.size(), 0.0);

#pragma omp parallel for schedule(static)
  for (std::int64_t n = 0; n <= n_periods; ++n) {
    out.times[n] = static_cast<double>(n) * period;
    if (n == 0) continue;
    Eigen::VectorXcd pu(d), ph(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      pu(a) = unit_power(us.phases(a), n);
      ph(a) = std::polar(1.0, std::fmod(hs.energies(a) * out.times[n], 2.0 * std::numbers::pi));
    }
    // U^n = Z diag(pu) Z^dag, so U^{-n} O U^n has entries conj(pu_a) O_ab pu_b.
    Matrix a_lab = pu.conjugate().asDiagonal() * ot * pu.asDiagonal();
    Matrix a_eff = ph.asDiagonal() * os * ph.conjugate().asDiagonal();
    Matrix diff = a_lab - s * a_eff * s.adjoint();
    out.delta_norm[n] = spectral_norm(diff);
  }

  for (std::size_t k = 0; k < out.delta_norm.size(); ++k)
    if (out.delta_norm[k] >= kDeltaCalibrationLevel) {
      out.calibration_index = k;
      break;
    }

  const double suppression = std::exp(-magnus.kappa_prime * magnus.omega_star);
  for (const auto& e : envelopes) {
    double c = 1.0;
    if (out.calibration_index) {
      const std::size_t k = *out.calibration_index;
      c = out.delta_norm[k] / envelope_shape(e, suppression, out.times[k]);
    }
    out.constants[e.kind] = c;
    auto& v = out.envelopes[e.kind];
    for (double t : out.times) v.push_back(c * envelope_shape(e, suppression, t));
  }
  return out;
}

DominationReport envelope_domination(const DeltaTrace& trace, EnvelopeKind kind,
                                     double rel_tol) {
  auto it = trace.envelopes.find(kind);
  if (it == trace.envelopes.end())
    throw DomainError(fmt::format("envelope '{}' was not computed", envelope_kind_name(kind)));
  DominationReport r;
  const std::size_t start = trace.calibration_index.value_or(0);
  for (std::size_t k = start; k < trace.delta_norm.size(); ++k) {
    const double env = it->second[k];
    if (env > 0.0) r.worst_ratio = std::max(r.worst_ratio, trace.delta_norm[k] / env);
    if (trace.delta_norm[k] > env * (1.0 + rel_tol)) ++r.violations;
  }
  r.pass = r.violations == 0;
  return r;
}

std::vector<double> window_average(const std::vector<double>& v, std::size_t window) {
  if (window == 0) throw DomainError("window must be positive");
  std::vector<double> out;
  for (std::size_t k = 0; k + window <= v.size(); k += window)
    out.push_back(std::accumulate(v.begin() + k, v.begin() + k + window, 0.0) /
                  static_cast<double>(window));
  return out;
}

}  // namespace floq
