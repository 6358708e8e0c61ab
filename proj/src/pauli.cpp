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

#include "floq/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "floq/dense.hpp"
#include "floq/errors.hpp"
#include "floq/kernels.hpp"

namespace floq {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
  }
  throw DomainError(fmt::format("'{}' is not a Pauli letter", c));
}

namespace {
void check_site(int site) {
  if (site < 0 || site >= kMaxSites)
    throw IndexError(fmt::format("site {} outside [0, {})", site, kMaxSites));
}
}  // namespace

PauliString::PauliString(const std::map<int, Pauli>& letters) {
  for (auto [s, p] : letters) set(s, p);
}

PauliString PauliString::single(int site, Pauli p) {
  PauliString s;
  s.set(site, p);
  return s;
}

Pauli PauliString::at(int site) const {
  check_site(site);
  int xb = (x_ >> site) & 1, zb = (z_ >> site) & 1;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(int site, Pauli p) {
  check_site(site);
  std::uint64_t bit = std::uint64_t(1) << site;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (std::uint64_t m = support_mask(); m; m &= m - 1)
    out.push_back(std::countr_zero(m));
  return out;
}

std::string PauliString::str() const {
  if (is_identity()) return "I";
  std::string out;
  for (int s : support()) {
    if (!out.empty()) out += ' ';
    out += pauli_char(at(s));
    out += std::to_string(s);
  }
  return out;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  const std::uint64_t ax = a.x() & ~a.z(), ay = a.x() & a.z(),
                      az = ~a.x() & a.z();
  const std::uint64_t bx = b.x() & ~b.z(), by = b.x() & b.z(),
                      bz = ~b.x() & b.z();
  // XY = iZ, YZ = iX, ZX = iY and the reverse orders pick up -i.
  const std::uint64_t plus = (ax & by) | (ay & bz) | (az & bx);
  const std::uint64_t minus = (ay & bx) | (az & by) | (ax & bz);
  int phase = (std::popcount(plus) - std::popcount(minus)) & 3;
  return {phase, PauliString(a.x() ^ b.x(), a.z() ^ b.z())};
}

Complex i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void canonicalize(std::vector<Term>& terms, double prune) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.string < b.string; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Term t = terms[i++];
    while (i < terms.size() && terms[i].string == t.string)
      t.coefficient += terms[i++].coefficient;
    if (std::abs(t.coefficient) >= prune) terms[out++] = t;
  }
  terms.resize(out);
}

OperatorSum::OperatorSum(std::vector<Term> terms) : terms_(std::move(terms)) {
  canonicalize(terms_);
}

OperatorSum OperatorSum::identity(Complex c) {
  return OperatorSum({{PauliString(), c}});
}

OperatorSum OperatorSum::single(int site, Pauli p, Complex c) {
  return OperatorSum({{PauliString::single(site, p), c}});
}

OperatorSum OperatorSum::from_string(const PauliString& s, Complex c) {
  return OperatorSum({{s, c}});
}

Complex OperatorSum::coefficient(const PauliString& s) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), s,
      [](const Term& t, const PauliString& key) { return t.string < key; });
  if (it != terms_.end() && it->string == s) return it->coefficient;
  return 0.0;
}

std::uint64_t OperatorSum::support_mask() const {
  std::uint64_t m = 0;
  for (const auto& t : terms_) m |= t.string.support_mask();
  return m;
}

double OperatorSum::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient));
  return m;
}

double OperatorSum::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

OperatorSum OperatorSum::adjoint() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient = std::conj(t.coefficient);
  return OperatorSum(Canonical{}, std::move(out));
}

bool OperatorSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
    return std::abs(t.coefficient.imag()) <= tol;
  });
}

bool OperatorSum::is_anti_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
    return std::abs(t.coefficient.real()) <= tol;
  });
}

namespace {
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b,
                        double sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].string < b[j].string)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].string < a[i].string) {
      out.push_back({b[j].string, sign * b[j].coefficient});
      ++j;
    } else {
      Complex c = a[i].coefficient + sign * b[j].coefficient;
      if (std::abs(c) >= OperatorSum::kPruneTolerance)
        out.push_back({a[i].string, c});
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  terms_ = merge(terms_, other.terms_, 1.0);
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
  terms_ = merge(terms_, other.terms_, -1.0);
  return *this;
}

OperatorSum& OperatorSum::operator*=(Complex c) {
  for (auto& t : terms_) t.coefficient *= c;
  std::erase_if(terms_, [](const Term& t) {
    return std::abs(t.coefficient) < kPruneTolerance;
  });
  return *this;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  return OperatorSum(OperatorSum::Canonical{},
                     kernels::omp::product(a.terms_, b.terms_,
                                           kernels::ProductMode::Product));
}

double max_abs_difference(const OperatorSum& a, const OperatorSum& b) {
  auto d = merge(a.terms_, b.terms_, -1.0);
  double m = 0.0;
  for (const auto& t : d) m = std::max(m, std::abs(t.coefficient));
  return m;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
  return OperatorSum(kernels::omp::product(a.terms(), b.terms(),
                                           kernels::ProductMode::Commutator));
}

OperatorSum adjoint_power(const OperatorSum& h, const OperatorSum& o, int k,
                          std::size_t term_cap) {
  if (k < 0) throw DomainError("adjoint_power needs k >= 0");
  OperatorSum cur = o;
  for (int depth = 1; depth <= k; ++depth) {
    cur = commutator(h, cur);
    if (cur.size() > term_cap)
      throw ResourceError(fmt::format(
          "adjoint_power: {} terms at depth {} of {} exceeds the cap of {}",
          cur.size(), depth, k, term_cap));
    if (cur.is_zero()) break;
  }
  return cur;
}

namespace {
std::vector<int> mask_sites(std::uint64_t m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}
}  // namespace

double operator_norm(const OperatorSum& a, NormMethod method) {
  if (a.is_zero()) return 0.0;
  if (method == NormMethod::Upper) return a.coefficient_l1();
  auto sites = mask_sites(a.support_mask());
  if (static_cast<int>(sites.size()) > kExactGlobalCap)
    throw ResourceError(fmt::format(
        "exact norm on {} sites exceeds the cap of {}", sites.size(),
        kExactGlobalCap));
  return spectral_norm(to_matrix(a.terms(), sites));
}

std::vector<SupportGroup> support_groups(const OperatorSum& h) {
  std::map<std::uint64_t, std::vector<Term>> by_support;
  for (const auto& t : h.terms()) by_support[t.string.support_mask()].push_back(t);

  std::vector<std::uint64_t> keys;
  std::vector<std::vector<Term>> exact_groups;
  std::vector<SupportGroup> out;
  out.reserve(by_support.size());
  for (auto& [mask, terms] : by_support) {
    if (std::popcount(mask) <= kExactSupportCap) {
      out.push_back({mask, 0.0, true});
      exact_groups.push_back(std::move(terms));
    } else {
      double s = 0.0;
      for (const auto& t : terms) s += std::abs(t.coefficient);
      out.push_back({mask, s, false});
    }
  }
  auto norms = kernels::omp::group_norms(exact_groups);
  std::size_t g = 0;
  for (auto& grp : out)
    if (grp.exact) grp.norm = norms[g++];
  return out;
}

LocalNorm local_norm_report(std::span<const SupportGroup> groups) {
  std::vector<double> per_site(kMaxSites, 0.0);
  bool exact = true;
  for (const auto& g : groups) {
    exact = exact && g.exact;
    for (std::uint64_t m = g.support; m; m &= m - 1)
      per_site[std::countr_zero(m)] += g.norm;
  }
  return {*std::max_element(per_site.begin(), per_site.end()), exact};
}

double local_norm(const OperatorSum& h) {
  auto groups = support_groups(h);
  return local_norm_report(groups).value;
}

CertificateReport powerlaw_certificate(const OperatorSum& h,
                                       const PowerLawSpec& spec,
                                       double prefactor,
                                       const Lattice& lattice) {
  auto groups = support_groups(h);
  return powerlaw_certificate(groups, spec, prefactor, lattice);
}

CertificateReport powerlaw_certificate(std::span<const SupportGroup> groups,
                                       const PowerLawSpec& spec,
                                       double prefactor,
                                       const Lattice& lattice) {
  if (!(prefactor > 0.0)) throw DomainError("certificate prefactor must be > 0");
  if (!(spec.eta > 0.0) || spec.k < 1 || spec.alpha < 0.0)
    throw DomainError("power-law spec needs alpha >= 0, eta > 0, k >= 1");
  constexpr double kSlack = 1e-10;
  const int n = lattice.size();
  const double scale = prefactor * spec.eta;

  CertificateReport rep;
  rep.support_bound = spec.k + 1;
  std::vector<double> pair(std::size_t(n) * n, 0.0), single(n, 0.0);
  for (const auto& g : groups) {
    rep.exact_norms = rep.exact_norms && g.exact;
    auto sites = mask_sites(g.support);
    rep.max_support = std::max<int>(rep.max_support, sites.size());
    for (int s : sites)
      if (s >= n)
        throw IndexError(fmt::format("operator touches site {} outside a {}-site lattice", s, n));
    if (sites.size() == 1) single[sites[0]] += g.norm;
    for (std::size_t a = 0; a < sites.size(); ++a)
      for (std::size_t b = a + 1; b < sites.size(); ++b)
        pair[std::size_t(sites[a]) * n + sites[b]] += g.norm;
  }
  for (int i = 0; i < n; ++i) {
    double r = single[i] / scale;
    if (r > rep.worst_single_site) {
      rep.worst_single_site = r;
      rep.worst_site = i;
    }
    for (int j = i + 1; j < n; ++j) {
      double s = pair[std::size_t(i) * n + j];
      if (s == 0.0) continue;
      double ratio = s * std::pow(lattice.distance(i, j), spec.alpha) / scale;
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  }
  rep.pass = rep.worst_ratio <= 1.0 + kSlack &&
             rep.worst_single_site <= 1.0 + kSlack &&
             rep.max_support <= rep.support_bound;
  rep.required_prefactor =
      prefactor * std::max(rep.worst_ratio, rep.worst_single_site);
  return rep;
}

}  // namespace floq
