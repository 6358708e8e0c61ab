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

#include "floq/fourier.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "floq/errors.hpp"

namespace floq {

FourierOperator::FourierOperator(double omega) : omega_(omega) {
  if (!(omega > 0.0)) throw DomainError("drive frequency must be positive");
}

FourierOperator FourierOperator::constant(double omega, OperatorSum h0) {
  FourierOperator f(omega);
  f.set_harmonic(0, std::move(h0));
  return f;
}

FourierOperator FourierOperator::cosine(double omega, double g,
                                        const OperatorSum& o) {
  FourierOperator f(omega);
  f.set_harmonic(1, o * Complex(0.5 * g));
  f.set_harmonic(-1, o * Complex(0.5 * g));
  return f;
}

FourierOperator FourierOperator::sine(double omega, double g,
                                      const OperatorSum& o) {
  FourierOperator f(omega);
  f.set_harmonic(1, o * Complex(0.0, -0.5 * g));
  f.set_harmonic(-1, o * Complex(0.0, 0.5 * g));
  return f;
}

double FourierOperator::period() const { return 2.0 * std::numbers::pi / omega_; }

const OperatorSum& FourierOperator::harmonic(int m) const {
  static const OperatorSum kZero;
  auto it = harmonics_.find(m);
  return it == harmonics_.end() ? kZero : it->second;
}

void FourierOperator::set_harmonic(int m, OperatorSum h) {
  if (h.is_zero())
    harmonics_.erase(m);
  else
    harmonics_[m] = std::move(h);
}

int FourierOperator::max_harmonic() const {
  int m = 0;
  for (const auto& [k, h] : harmonics_) m = std::max(m, std::abs(k));
  return m;
}

std::size_t FourierOperator::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, h] : harmonics_) n += h.size();
  return n;
}

OperatorSum FourierOperator::evaluate_at(double t) const {
  OperatorSum out;
  for (const auto& [m, h] : harmonics_)
    out += h * std::exp(Complex(0.0, m * omega_ * t));
  return out;
}

FourierOperator FourierOperator::derivative() const {
  FourierOperator out(omega_);
  for (const auto& [m, h] : harmonics_)
    if (m != 0) out.set_harmonic(m, h * Complex(0.0, m * omega_));
  return out;
}

FourierOperator FourierOperator::adjoint() const {
  FourierOperator out(omega_);
  for (const auto& [m, h] : harmonics_) out.set_harmonic(-m, h.adjoint());
  return out;
}

bool FourierOperator::is_hermitian(double tol) const {
  for (const auto& [m, h] : harmonics_)
    if (max_abs_difference(harmonic(-m), h.adjoint()) > tol) return false;
  return true;
}

bool FourierOperator::is_anti_hermitian(double tol) const {
  for (const auto& [m, h] : harmonics_)
    if (max_abs_difference(harmonic(-m), h.adjoint() * Complex(-1.0)) > tol)
      return false;
  return true;
}

std::uint64_t FourierOperator::support_mask() const {
  std::uint64_t mask = 0;
  for (const auto& [m, h] : harmonics_) mask |= h.support_mask();
  return mask;
}

double FourierOperator::max_abs_coefficient() const {
  double out = 0.0;
  for (const auto& [m, h] : harmonics_) out = std::max(out, h.max_abs_coefficient());
  return out;
}

void FourierOperator::check_omega(const FourierOperator& other) const {
  if (std::abs(omega_ - other.omega_) > 1e-14 * omega_)
    throw DomainError(fmt::format("frequency mismatch: {} vs {}", omega_,
                                  other.omega_));
}

FourierOperator& FourierOperator::operator+=(const FourierOperator& other) {
  check_omega(other);
  for (const auto& [m, h] : other.harmonics_) set_harmonic(m, harmonic(m) + h);
  return *this;
}

FourierOperator& FourierOperator::operator-=(const FourierOperator& other) {
  check_omega(other);
  for (const auto& [m, h] : other.harmonics_) set_harmonic(m, harmonic(m) - h);
  return *this;
}

FourierOperator& FourierOperator::operator*=(Complex c) {
  std::map<int, OperatorSum> scaled;
  for (auto& [m, h] : harmonics_) {
    auto s = h * c;
    if (!s.is_zero()) scaled.emplace(m, std::move(s));
  }
  harmonics_ = std::move(scaled);
  return *this;
}

FourierOperator& FourierOperator::operator+=(const OperatorSum& constant) {
  set_harmonic(0, harmonic(0) + constant);
  return *this;
}

FourierOperator antiderivative_zero_start(const FourierOperator& f) {
  if (!f.harmonic(0).is_zero())
    throw DomainError(fmt::format(
        "antiderivative of a series with nonzero mean (largest coefficient {})",
        f.harmonic(0).max_abs_coefficient()));
  FourierOperator out(f.omega());
  OperatorSum offset;
  for (const auto& [m, h] : f.harmonics()) {
    auto g = h * (1.0 / Complex(0.0, m * f.omega()));
    offset -= g;
    out.set_harmonic(m, std::move(g));
  }
  out.set_harmonic(0, std::move(offset));
  return out;
}

FourierOperator fourier_commutator(const FourierOperator& f,
                                   const FourierOperator& g) {
  if (std::abs(f.omega() - g.omega()) > 1e-14 * f.omega())
    throw DomainError(fmt::format("frequency mismatch: {} vs {}", f.omega(),
                                  g.omega()));
  std::map<int, std::vector<Term>> acc;
  for (const auto& [p, fp] : f.harmonics()) {
    for (const auto& [q, gq] : g.harmonics()) {
      auto c = commutator(fp, gq);
      auto& slot = acc[p + q];
      slot.insert(slot.end(), c.terms().begin(), c.terms().end());
    }
  }
  FourierOperator out(f.omega());
  for (auto& [m, terms] : acc) out.set_harmonic(m, OperatorSum(std::move(terms)));
  return out;
}

std::vector<SupportGroup> fourier_support_groups(const FourierOperator& f) {
  std::map<std::uint64_t, SupportGroup> acc;
  for (const auto& [m, h] : f.harmonics()) {
    for (const auto& g : support_groups(h)) {
      auto [it, fresh] = acc.try_emplace(g.support, SupportGroup{g.support, 0.0, true});
      it->second.norm += g.norm;
      it->second.exact = it->second.exact && g.exact;
    }
  }
  std::vector<SupportGroup> out;
  out.reserve(acc.size());
  for (const auto& [mask, g] : acc) out.push_back(g);
  return out;
}

double fourier_local_norm(const FourierOperator& f) {
  auto groups = fourier_support_groups(f);
  return local_norm_report(groups).value;
}

}  // namespace floq
