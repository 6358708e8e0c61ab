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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "floq/dense.hpp"
#include "floq/errors.hpp"
#include "floq/magnus.hpp"

using namespace floq;

namespace {

const Complex I1(0.0, 1.0);

OperatorSum zz(int i, int j, double c) {
  PauliString s;
  s.set(i, Pauli::Z);
  s.set(j, Pauli::Z);
  return OperatorSum::from_string(s, c);
}

OperatorSum ising(int n, double alpha, double hx) {
  OperatorSum h;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) h += zz(i, j, std::pow(double(j - i), -alpha));
  for (int i = 0; i < n; ++i) h += OperatorSum::single(i, Pauli::X, hx);
  return h;
}

OperatorSum sum_x(int n) {
  OperatorSum v;
  for (int i = 0; i < n; ++i) v += OperatorSum::single(i, Pauli::X);
  return v;
}

// Taylor coefficient in eps of
//   F(eps) = e^{-W} H e^{W} - (i/eps) e^{-W} d/dt e^{W},  W = sum_j eps^j Omega_j(t),
// extracted with a discrete Cauchy integral. d/dt e^W comes from the block
// exponential exp([[W, W'], [0, W]]).
Matrix cauchy_gq(const Matrix& h, const std::vector<Matrix>& om, const std::vector<Matrix>& dom,
                 int q, double radius, int points) {
  const Eigen::Index d = h.rows();
  Matrix acc = Matrix::Zero(d, d);
  for (int k = 0; k < points; ++k) {
    const Complex eps = std::polar(radius, 2.0 * std::numbers::pi * k / points);
    Matrix w = Matrix::Zero(d, d), wd = Matrix::Zero(d, d);
    Complex p = 1.0;
    for (std::size_t j = 0; j < om.size(); ++j) {
      p *= eps;
      w += p * om[j];
      wd += p * dom[j];
    }
    Matrix block = Matrix::Zero(2 * d, 2 * d);
    block.topLeftCorner(d, d) = w;
    block.bottomRightCorner(d, d) = w;
    block.topRightCorner(d, d) = wd;
    Matrix e = block.exp();
    Matrix ew = e.topLeftCorner(d, d), dew = e.topRightCorner(d, d);
    Matrix emw = (-w).exp();
    Matrix f = emw * h * ew - (I1 / eps) * emw * dew;
    acc += f * std::pow(eps, -q);
  }
  return acc / double(points);
}

}  // namespace

TEST_SUITE("magnus") {

TEST_CASE("q_max selection") {
  MagnusConfig c;
  c.c = 10;
  c.period = 0.01;
  c.lambda = 5;
  c.kappa = 1;
  auto s = select_qmax(c);
  CHECK(s.omega_star == doctest::Approx(2.0));
  CHECK(s.q_max == 2);
  c.period = 0.005;
  CHECK(select_qmax(c).omega_star == doctest::Approx(2.0 * s.omega_star));
  c.kappa = std::numbers::ln2;
  CHECK_THROWS_AS(select_qmax(c), DomainError);
  c.kappa = 1.0;
  c.period = 10.0;
  CHECK(select_qmax(c).q_max == 1);
}

TEST_CASE("order zero") {
  const double w = 5.0, g = 0.5;
  auto h0 = ising(3, 3.0, 0.5);
  auto o = sum_x(3);
  MagnusState st(FourierOperator::constant(w, h0) + FourierOperator::cosine(w, g, o), 2);
  CHECK(st.advance(0) < 1e-12);
  CHECK(max_abs_difference(st.hbar()[0], h0) < 1e-15);
  auto expect = FourierOperator::sine(w, g / w, o) * Complex(0.0, -1.0);
  for (double t : {0.0, 0.1, 0.4})
    CHECK(max_abs_difference(st.omegas()[0].evaluate_at(t), expect.evaluate_at(t)) < 1e-14);
  CHECK_THROWS(st.advance(2));

  MagnusState still(FourierOperator::constant(w, h0), 2);
  still.advance(0);
  CHECK(max_abs_difference(still.hbar()[0], h0) == 0.0);
  CHECK(still.omegas()[0].is_zero());
}

TEST_CASE("order one on a single driven spin") {
  const double w = 4.0, g = 0.5;
  auto h0 = OperatorSum::single(0, Pauli::Z, 0.8);
  auto x = OperatorSum::single(0, Pauli::X);
  auto h = FourierOperator::constant(w, h0) + FourierOperator::cosine(w, g, x);
  MagnusState st(h, 3);
  st.advance(0);
  auto om1 = st.omegas()[0];
  auto g1 = st.compute_Gq(1);
  auto expect = fourier_commutator(om1, FourierOperator::constant(w, h0)) * Complex(-1.0);
  for (int k = 0; k < 8; ++k) {
    const double t = k * h.period() / 8;
    CHECK(max_abs_difference(g1.evaluate_at(t), expect.evaluate_at(t)) < 1e-13);
  }
}

TEST_CASE("vanishing generators give vanishing higher orders") {
  auto h = FourierOperator::constant(2.0, ising(3, 2.0, 1.0)) +
           FourierOperator::cosine(2.0, 0.3, sum_x(3));
  std::vector<FourierOperator> zeros(4, FourierOperator(2.0));
  for (int q = 1; q <= 4; ++q) CHECK(compute_Gq(h, zeros, q).is_zero());
  CHECK(max_abs_difference(compute_Gq(h, zeros, 0).evaluate_at(0.3), h.evaluate_at(0.3)) < 1e-15);
  CHECK_THROWS_AS(compute_Gq(h, zeros, -1), DomainError);
}

TEST_CASE("nested-adjoint expansion agrees with the contour-integral oracle") {
  const int n = 2;
  const double w = 6.0;
  auto h = FourierOperator::constant(w, zz(0, 1, 1.0) + OperatorSum::single(0, Pauli::X, 0.4) +
                                            OperatorSum::single(1, Pauli::Z, 0.3)) +
           FourierOperator::cosine(w, 0.7, OperatorSum::single(0, Pauli::X) +
                                           OperatorSum::single(1, Pauli::Y, 0.5));
  const int qmax = 4;
  MagnusState st(h, qmax);
  for (int q = 0; q < qmax; ++q) st.advance(q);
  const auto sites = all_sites(n);
  for (double t : {0.13, 0.61}) {
    std::vector<Matrix> om, dom;
    for (const auto& o : st.omegas()) {
      om.push_back(to_matrix(o.evaluate_at(t), sites).matrix);
      dom.push_back(to_matrix(o.derivative().evaluate_at(t), sites).matrix);
    }
    const Matrix hm = to_matrix(h.evaluate_at(t), sites).matrix;
    for (int q = 0; q <= 3; ++q) {
      Matrix oracle = cauchy_gq(hm, om, dom, q, 0.5, 48);
      // the contour picks up -i dOmega_{q+1}/dt as well
      oracle += I1 * dom[q];
      Matrix got = to_matrix(st.compute_Gq(q).evaluate_at(t), sites).matrix;
      CHECK((got - oracle).norm() < 1e-9 * std::max(1.0, oracle.norm()));
    }
  }
}

TEST_CASE("identity, hermiticity and the stroboscopic frame") {
  const int n = 4;
  const double w = 2 * std::numbers::pi / 0.2;
  auto h = FourierOperator::constant(w, ising(n, 3.0, 0.5)) + FourierOperator::cosine(w, 0.5, sum_x(n));
  MagnusConfig cfg;
  cfg.q_max = 3;
  cfg.report_orders = 4;
  auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(n));
  for (double v : r.identity_residuals) CHECK(v < 1e-10);
  for (const auto& hb : r.hbar_list) CHECK(hb.is_hermitian(1e-12));
  for (const auto& om : r.omega_list) CHECK(om.is_anti_hermitian(1e-12));
  CHECK(r.total_omega().evaluate_at(r.period).max_abs_coefficient() < 1e-12);
  CHECK(r.total_omega().evaluate_at(0.0).max_abs_coefficient() < 1e-12);
  for (const auto& c : r.certificates)
    if (c.q < r.q_max) {
      CHECK(c.report.pass);
      CHECK(c.norm_ok);
    }
  CHECK(r.h_star_certificate.pass);
  CHECK(r.v_prime_local_norm <= r.v_prime_bound);
  CHECK(r.kappa_prime == doctest::Approx(1.0 - std::numbers::ln2 - 0.1));
}

TEST_CASE("no drive leaves H0 untouched") {
  const int n = 3;
  auto h0 = ising(n, 3.0, 0.5);
  auto h = FourierOperator::constant(8.0, h0);
  MagnusConfig cfg;
  cfg.q_max = 2;
  auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(n));
  CHECK(max_abs_difference(r.h_star, h0) < 1e-15);
  CHECK(r.v_prime.is_zero());
  for (const auto& om : r.omega_list) CHECK(om.is_zero());
  for (double t : {0.0, 0.3}) CHECK(residual_drive_exact(r, h, t, all_sites(n)).matrix.norm() < 1e-12);
}

TEST_CASE("first-order average vanishes for a uniform transverse drive") {
  auto h = FourierOperator::constant(10.0, zz(0, 1, 1.0)) +
           FourierOperator::cosine(10.0, 0.5, sum_x(2));
  MagnusConfig cfg;
  cfg.q_max = 2;
  auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(2));
  REQUIRE(r.hbar_list.size() == 2);
  CHECK(r.hbar_list[1].max_abs_coefficient() < 1e-14);
}

TEST_CASE("preconditions are enforced") {
  auto big = FourierOperator::constant(10.0, zz(0, 1, 3.0));
  MagnusConfig cfg;
  cfg.q_max = 2;
  CHECK_THROWS_AS(build_effective(big, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(2)), DomainError);
  auto nonherm = FourierOperator::constant(10.0, OperatorSum::single(0, Pauli::X, I1));
  CHECK_THROWS_AS(build_effective(nonherm, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(2)), DomainError);
}

TEST_CASE("residual at t = 0") {
  const int n = 3;
  auto h = FourierOperator::constant(20.0, ising(n, 3.0, 0.5)) + FourierOperator::cosine(20.0, 0.5, sum_x(n));
  MagnusConfig cfg;
  cfg.q_max = 2;
  auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(n));
  const auto sites = all_sites(n);
  Matrix expect = to_matrix(h.evaluate_at(0.0), sites).matrix -
                  I1 * to_matrix(r.total_omega().derivative().evaluate_at(0.0), sites).matrix -
                  to_matrix(r.h_star, sites).matrix;
  CHECK((residual_drive_exact(r, h, 0.0, sites).matrix - expect).norm() < 1e-10);
}

TEST_CASE("one-period propagator error shrinks with the period") {
  // ||U_F - exp(-i T H_*)|| = O(T^{q_max + 1})
  const int n = 3;
  std::vector<double> err;
  for (double period : {0.2, 0.1}) {
    const double w = 2 * std::numbers::pi / period;
    auto h = FourierOperator::constant(w, ising(n, 3.0, 0.5)) + FourierOperator::cosine(w, 0.5, sum_x(n));
    MagnusConfig cfg;
    cfg.q_max = 2;
    auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(n));
    auto uf = floquet_propagator(h, all_sites(n)).u.matrix;
    auto ue = expm_hermitian(to_matrix(r.h_star, all_sites(n)).matrix, period);
    err.push_back(spectral_norm(uf - ue));
  }
  CHECK(err[0] / err[1] >= std::pow(2.0, 2.5));
}

TEST_CASE("residual shrinks with the period at fixed order") {
  const int n = 3;
  std::vector<double> res;
  for (double period : {0.2, 0.1}) {
    const double w = 2 * std::numbers::pi / period;
    auto h = FourierOperator::constant(w, ising(n, 3.0, 0.5)) + FourierOperator::cosine(w, 0.5, sum_x(n));
    MagnusConfig cfg;
    cfg.q_max = 2;
    cfg.report_orders = 4;
    auto r = build_effective(h, cfg, {3.0, 1.0, 1, 1}, Lattice::chain(n));
    res.push_back(max_residual_norm(r, h, all_sites(n), 16));
  }
  CHECK(res[0] / res[1] >= std::pow(2.0, 1.5));
}

}
