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

#include "floq/lemmas.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <numbers>
#include <random>

#include "floq/errors.hpp"

namespace floq {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_qk(int q, int k) {
  if (k < 1) throw DomainError(fmt::format("composition needs k >= 1 (k = {})", k));
  if (k > q) throw DomainError(fmt::format("composition needs k <= q (q = {}, k = {})", q, k));
}

// sums[k][m] = sum over compositions of m into k parts of prod i_j!
BigInt composition_dp(int q, int k, int min_part) {
  std::vector<BigInt> fact(q + 1);
  for (int i = 0; i <= q; ++i) fact[i] = factorial(i);
  std::vector<BigInt> cur(q + 1, 0), next(q + 1);
  cur[0] = 1;
  for (int part = 0; part < k; ++part) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (int m = 0; m <= q; ++m) {
      if (cur[m] == 0) continue;
      for (int i = min_part; m + i <= q; ++i) next[m + i] += cur[m] * fact[i];
    }
    cur.swap(next);
  }
  return cur[q];
}

}  // namespace

FactorialSum factorial_composition_sum(int q, int k, bool allow_zero) {
  check_qk(q, k);
  FactorialSum out;
  out.exact = composition_dp(q, k, allow_zero ? 0 : 1);
  out.bound = allow_zero ? (BigInt(1) << k) * factorial(q) : factorial(q) / factorial(k - 1);
  return out;
}

BigInt factorial_composition_enumerate(int q, int k, bool allow_zero) {
  check_qk(q, k);
  const int lo = allow_zero ? 0 : 1;
  BigInt total = 0;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int slots) {
    if (slots == 1) {
      if (left < lo) return;
      BigInt p = factorial(left);
      for (int x : parts) p *= factorial(x);
      total += p;
      return;
    }
    for (int i = lo; i <= left - lo * (slots - 1); ++i) {
      parts.push_back(i);
      rec(left - i, slots - 1);
      parts.pop_back();
    }
  };
  rec(q, k);
  return total;
}

FactorialSum factorial_composition_corollary(int q0, int k) {
  check_qk(q0, k);
  FactorialSum out;
  out.exact = q0 == k ? BigInt(1) : composition_dp(q0 - k, k, 0);
  out.bound = (BigInt(1) << k) * factorial(q0 - k);
  return out;
}

RealPair c1_sum(int q0, double c) {
  if (q0 < 1) throw DomainError("c1 sum needs q0 >= 1");
  if (!(c > 0.0)) throw DomainError("c1 sum needs c > 0");
  double exact = 0.0;
  for (int k = 1; k <= q0; ++k) {
    const double log_term = k * std::log(2.0 * q0 / c) + std::lgamma(q0 - k + 1.0) -
                            std::lgamma(q0 + 1.0) - std::lgamma(k + 1.0);
    exact += std::exp(log_term);
  }
  const double bound = std::numbers::e / std::sqrt(2.0 * std::numbers::pi) *
                       std::expm1(2.0 * std::numbers::e / c);
  return {exact, bound};
}

RealPair tail_sum(double r_star, int dimension, double eta) {
  if (!(r_star > 1.0)) throw DomainError("tail sum needs r_star > 1");
  if (dimension < 1) throw DomainError("tail sum needs D >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("tail sum needs 0 < eta < 1");
  constexpr long kTermCap = 1L << 16;
  const double d = dimension;
  auto f = [&](double r) { return std::exp((d - 1.0) * std::log(r) - std::pow(r, eta)); };
  const double peak_at = std::pow((d - 1.0) / eta, 1.0 / eta);

  double exact = 0.0;
  long r = static_cast<long>(std::floor(r_star)) + 1;
  const long last = r + kTermCap;
  bool converged = false;
  for (; r < last; ++r) {
    const double term = f(static_cast<double>(r));
    exact += term;
    if (r > peak_at && term < 1e-300) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // sum_{n > R} f(n) <= int_R^inf f + max_{x >= R} f for unimodal f
    const double big_r = static_cast<double>(r);
    exact += boost::math::tgamma(d / eta, std::pow(big_r, eta)) / eta;
    exact += f(std::max(big_r, peak_at));
  }
  const double bound = 2.0 / eta * std::pow(2.0, d / eta) * std::tgamma(d / eta) *
                       std::pow(r_star, d) * std::exp(-std::pow(r_star, eta));
  return {exact, bound};
}

RealPair tail_inner_inequality(int beta, double x_star) {
  if (beta < 0) throw DomainError("inner inequality needs beta >= 0");
  if (!(x_star >= 1.0)) throw DomainError("inner inequality needs x_* >= 1");
  const double b = beta;
  const double exact = boost::math::tgamma(b + 1.0, x_star);
  const double bound =
      std::pow(2.0, b) * std::tgamma(b + 1.0) * std::pow(x_star, b) * std::exp(-x_star);
  return {exact, bound};
}

LemmaReport adjoint_closure_check(const OperatorSum& h1, ClosureSpec s1,
                                  const OperatorSum& h2, ClosureSpec s2,
                                  const Lattice& lattice, double alpha) {
  const PowerLawSpec p1{alpha, 1.0, lattice.dimension(), s1.k};
  const PowerLawSpec p2{alpha, 1.0, lattice.dimension(), s2.k};
  if (!powerlaw_certificate(h1, p1, s1.prefactor, lattice).pass)
    throw DomainError("precondition: first operator fails its certificate");
  if (!powerlaw_certificate(h2, p2, s2.prefactor, lattice).pass)
    throw DomainError("precondition: second operator fails its certificate");
  const double lambda = lattice_constants(lattice, alpha).lambda;
  const double prefactor = s1.prefactor * s2.prefactor * lambda * std::max(s1.k, s2.k);
  const PowerLawSpec out_spec{alpha, 1.0, lattice.dimension(), s1.k + s2.k};
  const auto cert = powerlaw_certificate(commutator(h1, h2), out_spec, prefactor, lattice);
  LemmaReport rep;
  rep.lemma = "adjoint_closure";
  rep.point = fmt::format("a={} k1={} b={} k2={} alpha={} worst_pair=({},{})", s1.prefactor,
                          s1.k, s2.prefactor, s2.k, alpha, cert.worst_i, cert.worst_j);
  rep.lhs = std::max(cert.worst_ratio, cert.worst_single_site);
  rep.rhs = 1.0;
  rep.pass = cert.pass;
  return rep;
}

OperatorSum random_powerlaw_operator(const Lattice& lattice, double alpha,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> letter(1, 3);
  const int n = lattice.size();
  OperatorSum h;
  for (int i = 0; i < n; ++i) {
    const auto p = static_cast<Pauli>(letter(rng));
    h += OperatorSum::single(i, p, unit(rng));
    for (int j = i + 1; j < n; ++j) {
      PauliString s;
      s.set(i, static_cast<Pauli>(letter(rng)));
      s.set(j, static_cast<Pauli>(letter(rng)));
      h += OperatorSum::from_string(s, unit(rng) * std::pow(lattice.distance(i, j), -alpha));
    }
  }
  return h;
}

std::vector<LemmaReport> run_closure_suite(const Lattice& lattice, double alpha, int count,
                                           std::uint64_t seed) {
  std::vector<LemmaReport> out;
  for (int s = 0; s < count; ++s) {
    const auto h1 = random_powerlaw_operator(lattice, alpha, seed + 2 * std::uint64_t(s));
    const auto h2 = random_powerlaw_operator(lattice, alpha, seed + 2 * std::uint64_t(s) + 1);
    auto rep = adjoint_closure_check(h1, {1.0, 1}, h2, {1.0, 1}, lattice, alpha);
    rep.point = fmt::format("seed={} {}", seed + 2 * std::uint64_t(s), rep.point);
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<LemmaReport> run_lemma_suite() {
  std::vector<LemmaReport> out;
  auto big = [](const BigInt& v) { return v.convert_to<double>(); };
  for (int q = 1; q <= 12; ++q)
    for (int k = 1; k <= q; ++k)
      for (bool zeros : {false, true}) {
        auto s = factorial_composition_sum(q, k, zeros);
        out.push_back({"factorial_composition",
                       fmt::format("q={} k={} zeros={}", q, k, int(zeros)), big(s.exact),
                       big(s.bound), s.exact <= s.bound});
      }
  for (int q = 1; q <= 12; ++q)
    for (int k = 1; k <= q; ++k) {
      auto s = factorial_composition_corollary(q, k);
      out.push_back({"factorial_corollary", fmt::format("q0={} k={}", q, k), big(s.exact),
                     big(s.bound), s.exact <= s.bound});
    }
  for (int q0 = 1; q0 <= 30; ++q0)
    for (double c : {1.0, 2.0, 5.0, 10.0, 100.0}) {
      auto s = c1_sum(q0, c);
      out.push_back({"c1_sum", fmt::format("q0={} c={}", q0, c), s.exact, s.bound,
                     s.exact <= s.bound});
    }
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 9; ++e)
      for (double r : {2.0, 4.0, 8.0, 16.0}) {
        const double eta = e / 10.0;
        auto s = tail_sum(r, d, eta);
        out.push_back({"tail_sum", fmt::format("D={} eta={} r_star={}", d, eta, r), s.exact,
                       s.bound, s.exact <= s.bound});
      }
  for (int beta = 0; beta <= 30; ++beta)
    for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      auto s = tail_inner_inequality(beta, x);
      out.push_back({"tail_inner", fmt::format("beta={} x_star={}", beta, x), s.exact,
                     s.bound, s.exact <= s.bound * (1.0 + 1e-12)});
    }
  return out;
}

}  // namespace floq
