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

#include "floq/lieb_robinson.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "floq/errors.hpp"

namespace floq {

namespace {
constexpr std::string_view kNames[] = {"HK",        "Gong",        "GongNoY",
                                       "GongNoYNoX", "TranKBody",  "TranR0Const",
                                       "Else",      "Conjectured"};

bool is_gong(BoundKind k) {
  return k == BoundKind::Gong || k == BoundKind::GongNoY || k == BoundKind::GongNoYNoX;
}
bool is_tran(BoundKind k) {
  return k == BoundKind::TranKBody || k == BoundKind::TranR0Const;
}
}  // namespace

std::string_view bound_kind_name(BoundKind kind) {
  return kNames[static_cast<int>(kind)];
}

BoundKind bound_kind_from_name(std::string_view name) {
  for (int k = 0; k < 8; ++k)
    if (kNames[k] == name) return static_cast<BoundKind>(k);
  throw DomainError(fmt::format("unknown bound kind '{}'", name));
}

void BoundParams::validate() const {
  const double d = dimension;
  auto fail = [&](std::string_view constraint) {
    throw DomainError(fmt::format("{} bound requires {} (alpha = {}, D = {})",
                                  bound_kind_name(kind), constraint, alpha, dimension));
  };
  if (dimension < 1) fail("D >= 1");
  if (!(C >= 0.0) || !(v >= 0.0)) fail("C >= 0 and v >= 0");
  if ((kind == BoundKind::HK || is_gong(kind) || kind == BoundKind::Else) && !(alpha > d))
    fail("alpha > D");
  if (is_tran(kind) && !(alpha > d + 1.0)) fail("alpha > D+1");
  if ((is_gong(kind) || is_tran(kind)) && !(mu > 0.0 && mu < 1.0)) fail("0 < mu < 1");
  if (is_tran(kind) && !(xi > 0.0 && xi < 1.0)) fail("0 < xi < 1");
  if (kind == BoundKind::Else) {
    const double lo = (d + 1.0) / (alpha - d + 1.0);
    if (!(sigma < 1.0 && sigma > lo))
      fail(fmt::format("1 > sigma > (D+1)/(alpha-D+1) = {:.6g} (sigma = {})", lo, sigma));
  }
  if (kind == BoundKind::Conjectured && !(beta_cone >= 1.0)) fail("beta_cone >= 1");
}

bool BoundParams::applicable() const {
  try {
    validate();
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

double eval_bound(const BoundParams& p, double t, double r) {
  p.validate();
  if (!(t >= 0.0) || !(r > 0.0))
    throw DomainError(fmt::format("eval_bound needs t >= 0 and r > 0 (t = {}, r = {})", t, r));
  const double a = p.alpha, d = p.dimension;
  switch (p.kind) {
    case BoundKind::HK:
      return p.C * p.card_x * p.card_y * std::exp(p.v * t) / std::pow(r, a);
    case BoundKind::Gong:
      return p.C * p.card_x * p.card_y * std::exp(p.v * t) *
             (std::pow((1.0 - p.mu) * r, -a) + std::exp(-p.mu * r));
    case BoundKind::GongNoY:
      return p.C * p.card_x *
             (std::exp(p.v * t) / (std::pow(1.0 - p.mu, a) * std::pow(r, a - d)) +
              std::exp(p.v * t - p.mu * r));
    case BoundKind::GongNoYNoX:
      return p.C * p.phi *
             (std::exp(p.v * t) / (std::pow(1.0 - p.mu, a) * std::pow(r, a - d - 1.0)) +
              std::exp(p.v * t - p.mu * r));
    case BoundKind::TranKBody:
      return p.C * std::pow(p.r0 + r, d - 1.0) *
             (std::pow(t, a - d) / (std::pow(1.0 - p.mu, a) * std::pow(r, a - d - 1.0)) +
              (t > 0.0 ? t * std::exp(-p.xi * r / t) : 0.0));
    case BoundKind::TranR0Const:
      return p.C *
             (std::pow(t, a - d) / (std::pow(1.0 - p.mu, a) * std::pow(r, a - 2.0 * d)) +
              (t > 0.0 ? t * std::pow(r, d - 1.0) * std::exp(-p.xi * r / t) : 0.0));
    case BoundKind::Else: {
      const double s = p.sigma;
      return p.C * (std::exp(p.v * t - std::pow(r, 1.0 - s)) +
                    std::pow(p.v * t, 1.0 + d / (1.0 - s)) / std::pow(r, s * (a - d)));
    }
    case BoundKind::Conjectured:
      return p.C * std::pow(std::pow(t, p.beta_cone) / r, a);
  }
  return 0.0;
}

namespace {

// sup over sources i and radii r of r^(alpha-D) sum_{d_ij >= r} d_ij^-alpha, and
// the same for e^(mu r) sum e^(-mu d_ij). Both sums are step functions of r,
// so the suprema sit at the realised distances.
std::pair<double, double> tail_constants(const Lattice& lattice, double alpha, double mu) {
  const int n = lattice.size(), dim = lattice.dimension();
  double p = 0.0, q = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> d;
    for (int j = 0; j < n; ++j)
      if (j != i) d.push_back(lattice.distance(i, j));
    std::sort(d.begin(), d.end());
    double sp = 0.0, sq = 0.0;
    for (std::size_t k = d.size(); k-- > 0;) {
      sp += std::pow(d[k], -alpha);
      sq += std::exp(-mu * d[k]);
      if (k > 0 && d[k - 1] == d[k]) continue;
      p = std::max(p, std::pow(d[k], alpha - dim) * sp);
      q = std::max(q, std::exp(mu * d[k]) * sq);
    }
  }
  return {p, q};
}

double hopping_ratio(const Lattice& lattice, double alpha) {
  const int n = lattice.size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = i == j ? 1.0 : std::pow(lattice.distance(i, j), -alpha);
  Eigen::MatrixXd m2 = m * m;
  double rho = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho = std::max(rho, m2(i, j) / m(i, j));
  return rho;
}

}  // namespace

BoundParams BoundParams::from_lattice_constants(BoundKind kind, const Lattice& lattice,
                                                double alpha, const SiteSet& x,
                                                const SiteSet& y, double mu, double xi,
                                                double sigma) {
  BoundParams p;
  p.kind = kind;
  p.alpha = alpha;
  p.dimension = lattice.dimension();
  p.mu = mu;
  p.xi = xi;
  p.sigma = sigma;
  p.card_x = x.size();
  p.card_y = y.size();
  p.phi = (x.empty() || x.size() >= lattice.size()) ? 1.0 : boundary_area(lattice, x);
  p.r0 = enclosing_radius(lattice, x);
  if (kind == BoundKind::Conjectured) return p;

  const auto lc = lattice_constants(lattice, alpha);
  const double cg = 1.0 / (6.0 * lc.lambda0);
  const double vg = 24.0 * lc.lambda0 * lc.lambda0;
  const double d = p.dimension;
  switch (kind) {
    case BoundKind::HK: {
      const double rho = hopping_ratio(lattice, alpha);
      p.C = 2.0 / rho;
      p.v = 2.0 * lc.lambda0 * rho;
      break;
    }
    case BoundKind::Gong:
    case BoundKind::Else:
      p.C = cg;
      p.v = vg;
      break;
    case BoundKind::GongNoY:
    case BoundKind::GongNoYNoX:
    case BoundKind::TranKBody:
    case BoundKind::TranR0Const: {
      auto [tp, tq] = tail_constants(lattice, alpha, mu);
      double c_noy = cg * std::max(tp, tq);
      double c_nn = c_noy * p.card_x / p.phi;
      p.v = vg;
      if (kind == BoundKind::GongNoY) {
        p.C = c_noy;
      } else if (kind == BoundKind::GongNoYNoX) {
        p.C = c_nn;
      } else {
        // Unit slices: 2 phi_max t f(1, xi_s r / t) with phi_max bounded by a
        // box boundary 2D 3^(D-1) (r0 + r)^(D-1), and xi = mu xi_s.
        if (!(xi < mu))
          throw DomainError("Tran constants from the slice transform need xi < mu");
        const double xi_s = xi / mu;
        const double box = 2.0 * d * std::pow(3.0, d - 1.0);
        p.C = 2.0 * box * box * c_nn * std::exp(vg) *
              std::max(1.0, std::pow(xi_s, -(alpha - d - 1.0)));
        p.v = 0.0;
      }
      break;
    }
    case BoundKind::Conjectured:
      break;
  }
  return p;
}

double time_slice_transform(const BoundFunction& base, double phi_max, double t,
                            double r, double tau, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("time slicing requires 0 < xi < 1");
  if (!(r > 0.0)) throw DomainError("time slicing requires r > 0");
  if (!(t >= tau && tau > t / r))
    throw DomainError(fmt::format("time slicing requires t >= tau > t/r (t = {}, tau = {}, r = {})",
                                  t, tau, r));
  const double ell = xi * r * tau / t;
  if (!(ell >= 1.0))
    throw DomainError(fmt::format("time slicing requires ell = xi r tau / t >= 1 (ell = {})", ell));
  return 2.0 * phi_max * (t / tau) * base(tau, ell);
}

std::optional<double> time_slice_minimum(const BoundFunction& base, double phi_max,
                                         double t, double r, double xi) {
  constexpr int kGrid = 64;
  std::optional<double> best;
  const double lo = std::log(t / r), hi = std::log(t);
  for (int k = 1; k <= kGrid; ++k) {
    const double tau = std::exp(lo + (hi - lo) * k / kGrid);
    if (!(tau > t / r) || !(xi * r * tau / t >= 1.0)) continue;
    const double v = time_slice_transform(base, phi_max, t, r, std::min(tau, t), xi);
    if (!best || v < *best) best = v;
  }
  return best;
}

double hopping_convolution(const Lattice& lattice, double alpha, int k, int i, int j) {
  if (k < 0) throw DomainError("convolution power must be >= 0");
  const int n = lattice.size();
  lattice.distance(i, j);
  std::vector<double> row(n, 0.0), next(n);
  row[i] = 1.0;
  for (int step = 0; step < k; ++step) {
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        s += row[a] * (a == b ? 1.0 : std::pow(lattice.distance(a, b), -alpha));
      next[b] = s;
    }
    row.swap(next);
  }
  return row[j];
}

HkSeries hk_series_oracle(const OperatorSum& h, const Lattice& lattice, double alpha,
                          const SiteSet& x, const SiteSet& y, double t, int k_max) {
  if (lattice.size() > 6 || k_max > 4)
    throw ResourceError(fmt::format(
        "exhaustive series limited to 6 sites and k_max <= 4 (got {} sites, k_max {})",
        lattice.size(), k_max));
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  auto to_mask = [&](const SiteSet& s) {
    std::uint64_t m = 0;
    for (int v : s.members()) {
      lattice.distance(v, v);
      m |= std::uint64_t(1) << v;
    }
    return m;
  };
  const std::uint64_t xm = to_mask(x), ym = to_mask(y);
  std::vector<SupportGroup> groups;
  for (const auto& g : support_groups(h))
    if (g.support != 0) groups.push_back(g);
  const std::size_t ng = groups.size();

  HkSeries out;
  // Chains Z_1..Z_k: Z_1 meets X, consecutive sets overlap, Z_k meets Y.
  std::vector<double> w(ng), next(ng);
  for (std::size_t a = 0; a < ng; ++a)
    w[a] = (groups[a].support & xm) ? groups[a].norm : 0.0;
  const double lambda = lattice_constants(lattice, alpha).lambda0;
  double fact = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      for (std::size_t b = 0; b < ng; ++b) {
        double s = 0.0;
        for (std::size_t a = 0; a < ng; ++a)
          if (groups[a].support & groups[b].support) s += w[a];
        next[b] = s * groups[b].norm;
      }
      w.swap(next);
    }
    double chain = 0.0;
    for (std::size_t a = 0; a < ng; ++a)
      if (groups[a].support & ym) chain += w[a];
    double conv = 0.0;
    for (int i : x.members())
      for (int j : y.members())
        conv += std::pow(lambda, k) * hopping_convolution(lattice, alpha, k, i, j);
    out.chain_sums.push_back(chain);
    out.convolution_sums.push_back(conv);
    fact *= k;
    const double weight = 2.0 * std::pow(2.0 * t, k) / fact;
    out.series_value += weight * chain;
    out.convolution_value += weight * conv;
  }
  return out;
}

namespace {

double commutator_norm(const Matrix& a, const Matrix& b) {
  Matrix m = a * b;
  Matrix k = Complex(0.0, 1.0) * (m - m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(k, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

ConeSeries measure_light_cone(const OperatorSum& h, const OperatorSum& a,
                              const std::vector<std::pair<double, OperatorSum>>& targets,
                              const std::vector<double>& times,
                              const std::vector<int>& sites) {
  for (const auto& [r, b] : targets)
    if (a.support_mask() & b.support_mask())
      throw DomainError("measure_commutator needs A and B on disjoint supports");
  auto spec = diagonalize(to_matrix(h.terms(), sites));
  const Matrix& v = spec.vectors;
  const RealVector& e = spec.energies;
  const Matrix at = v.adjoint() * to_matrix(a.terms(), sites) * v;
  std::vector<Matrix> bt;
  for (const auto& [r, b] : targets) bt.push_back(v.adjoint() * to_matrix(b.terms(), sites) * v);

  const std::size_t nt = times.size(), nb = targets.size();
  std::vector<ConePoint> grid(nb * nt);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < nb * nt; ++idx) {
    const std::size_t bi = idx / nt, ti = idx % nt;
    const double t = times[ti];
    double value = 0.0;
    if (t != 0.0) {
      Eigen::VectorXcd ph(e.size());
      for (Eigen::Index k = 0; k < e.size(); ++k) ph(k) = std::exp(Complex(0.0, e(k) * t));
      Matrix a_t = ph.asDiagonal() * at * ph.conjugate().asDiagonal();
      value = commutator_norm(a_t, bt[bi]);
    }
    grid[idx] = {t, targets[bi].first, value};
  }
  std::stable_sort(grid.begin(), grid.end(), [](const ConePoint& p, const ConePoint& q) {
    return p.r < q.r || (p.r == q.r && p.t < q.t);
  });
  return {std::move(grid)};
}

ConeSeries measure_commutator(const OperatorSum& h, const OperatorSum& a,
                              const OperatorSum& b, const std::vector<double>& times,
                              const std::vector<int>& sites) {
  return measure_light_cone(h, a, {{0.0, b}}, times, sites);
}

ConeSeries measure_commutator(const FourierOperator& h, const OperatorSum& a,
                              const OperatorSum& b, const std::vector<double>& times,
                              const std::vector<int>& sites) {
  if (a.support_mask() & b.support_mask())
    throw DomainError("measure_commutator needs A and B on disjoint supports");
  const auto am = to_matrix(a, sites);
  const Matrix bm = to_matrix(b.terms(), sites);
  ConeSeries out;
  for (double t : times) {
    double value = 0.0;
    if (t != 0.0) value = commutator_norm(heisenberg_evolve(h, am, t).matrix, bm);
    out.grid.push_back({t, 0.0, value});
  }
  std::stable_sort(out.grid.begin(), out.grid.end(),
                   [](const ConePoint& p, const ConePoint& q) { return p.t < q.t; });
  return out;
}

std::vector<ContourPoint> light_cone_contour(const ConeSeries& series, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("contour threshold must be positive");
  auto pts = series.grid;
  std::stable_sort(pts.begin(), pts.end(), [](const ConePoint& p, const ConePoint& q) {
    return p.r < q.r || (p.r == q.r && p.t < q.t);
  });
  std::vector<ContourPoint> out;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j < pts.size() && pts[j].r == pts[i].r) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (pts[k].value >= threshold) {
        double ts = pts[k].t;
        if (k > i) {
          const auto& p = pts[k - 1];
          ts = p.t + (threshold - p.value) * (pts[k].t - p.t) / (pts[k].value - p.value);
        }
        out.push_back({pts[i].r, ts});
        break;
      }
    }
    i = j;
  }
  return out;
}

}  // namespace floq
