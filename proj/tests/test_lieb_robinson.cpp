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

#include "floq/errors.hpp"
#include "floq/lieb_robinson.hpp"

using namespace floq;

namespace {

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

std::vector<int> range(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace

TEST_SUITE("lieb_robinson") {

TEST_CASE("bound kind names round trip") {
  for (auto k : kAllBoundKinds) CHECK(bound_kind_from_name(bound_kind_name(k)) == k);
  CHECK_THROWS_AS(bound_kind_from_name("nope"), DomainError);
  CHECK(is_conjectural(BoundKind::Conjectured));
  CHECK_FALSE(is_conjectural(BoundKind::Gong));
}

TEST_CASE("conjectured form at a point") {
  BoundParams p;
  p.kind = BoundKind::Conjectured;
  p.alpha = 2.0;
  p.beta_cone = 1.0;
  CHECK(eval_bound(p, 1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eval_bound(p, 0.0, 2.0) == 0.0);
}

TEST_CASE("Gong constants from the lattice") {
  auto lat = Lattice::chain(8);
  const double a = 3.0;
  auto p = BoundParams::from_lattice_constants(BoundKind::Gong, lat, a, {0}, {7});
  const double l0 = lattice_constants(lat, a).lambda0;
  CHECK(p.C == doctest::Approx(1.0 / (6.0 * l0)).epsilon(1e-14));
  CHECK(p.v == doctest::Approx(24.0 * l0 * l0).epsilon(1e-14));
  auto e = BoundParams::from_lattice_constants(BoundKind::Else, lat, a, {0}, {7}, 0.5, 0.5, 0.8);
  CHECK(e.C == p.C);
  CHECK(e.v == p.v);
}

TEST_CASE("HK constants on the three-site chain") {
  auto lat = Lattice::chain(3);
  auto p = BoundParams::from_lattice_constants(BoundKind::HK, lat, 2.0, {0}, {2});
  // J^2 / J: (0,2) gives 1.5 / 0.25 = 6, the maximum.
  CHECK(p.C == doctest::Approx(2.0 / 6.0));
  const double l0 = lattice_constants(lat, 2.0).lambda0;
  CHECK(p.v == doctest::Approx(12.0 * l0));
}

TEST_CASE("values at t = 0") {
  auto lat = Lattice::chain(10);
  const double a = 4.0;
  for (auto k : kAllBoundKinds) {
    auto p = BoundParams::from_lattice_constants(k, lat, a, {0}, {9}, 0.5, 0.25, 0.8);
    REQUIRE(p.applicable());
    const double v0 = eval_bound(p, 0.0, 3.0);
    switch (k) {
      case BoundKind::TranKBody:
      case BoundKind::TranR0Const:
      case BoundKind::Conjectured:
        CHECK(v0 == 0.0);
        break;
      case BoundKind::Else:
        CHECK(v0 == doctest::Approx(p.C * std::exp(-std::pow(3.0, 0.2))));
        break;
      default:
        CHECK(v0 > 0.0);
    }
  }
}

TEST_CASE("domain errors name the constraint") {
  BoundParams p;
  p.kind = BoundKind::Gong;
  p.alpha = 1.0;
  CHECK_THROWS_WITH_AS(eval_bound(p, 1.0, 1.0), doctest::Contains("alpha > D"), DomainError);
  p.kind = BoundKind::TranKBody;
  p.alpha = 1.5;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("alpha > D+1"), DomainError);
  p.kind = BoundKind::Else;
  p.alpha = 3.0;
  p.sigma = 0.5;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("sigma"), DomainError);
  p.kind = BoundKind::Conjectured;
  p.beta_cone = 0.5;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("beta_cone"), DomainError);
  p.beta_cone = 1.0;
  CHECK_THROWS_AS(eval_bound(p, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(eval_bound(p, 1.0, 0.0), DomainError);
  CHECK_THROWS_WITH_AS(BoundParams::from_lattice_constants(BoundKind::TranKBody,
                                                           Lattice::chain(6), 3.0, {0},
                                                           {5}, 0.5, 0.5),
                       doctest::Contains("xi < mu"), DomainError);
}

TEST_CASE("monotone in t and r on a chain") {
  auto lat = Lattice::chain(10);
  for (auto k : kAllBoundKinds) {
    auto p = BoundParams::from_lattice_constants(k, lat, 3.5, {0}, {9}, 0.5, 0.25, 0.8);
    CAPTURE(bound_kind_name(k));
    for (double r = 1.0; r <= 8.0; r += 1.0)
      for (double t = 0.1; t < 3.0; t += 0.1) {
        CHECK(eval_bound(p, t + 0.1, r) >= eval_bound(p, t, r));
        CHECK(eval_bound(p, t, r + 1.0) <= eval_bound(p, t, r));
      }
  }
}

TEST_CASE("time slicing with tau = t returns twice phi times the base") {
  BoundFunction f = [](double t, double r) { return t * t / r; };
  CHECK(time_slice_transform(f, 3.0, 2.0, 10.0, 2.0, 0.5) ==
        doctest::Approx(2.0 * 3.0 * f(2.0, 5.0)));
  BoundFunction zero = [](double, double) { return 0.0; };
  CHECK(time_slice_transform(zero, 1.0, 2.0, 10.0, 1.0, 0.5) == 0.0);
  CHECK_THROWS_AS(time_slice_transform(f, 1.0, 2.0, 10.0, 3.0, 0.5), DomainError);
  CHECK_THROWS_AS(time_slice_transform(f, 1.0, 2.0, 10.0, 0.1, 0.5), DomainError);
  CHECK_THROWS_WITH_AS(time_slice_transform(f, 1.0, 2.0, 3.0, 1.0, 0.5),
                       doctest::Contains("ell"), DomainError);
  CHECK_THROWS_AS(time_slice_transform(f, 1.0, 2.0, 10.0, 1.0, 1.0), DomainError);
  auto m = time_slice_minimum(f, 1.0, 2.0, 10.0, 0.5);
  REQUIRE(m);
  CHECK(*m <= time_slice_transform(f, 1.0, 2.0, 10.0, 2.0, 0.5) * (1.0 + 1e-12));
  CHECK_FALSE(time_slice_minimum(f, 1.0, 2.0, 1.5, 0.1));
}

TEST_CASE("unit slices of the Y-free bound sit under the k-body form") {
  auto lat = Lattice::chain(10);
  const double mu = 0.5, xi = 0.25, xi_s = xi / mu;
  for (double a : {2.5, 3.0, 4.0}) {
    CAPTURE(a);
    auto base = BoundParams::from_lattice_constants(BoundKind::GongNoYNoX, lat, a, {0}, {9},
                                                    mu, xi);
    auto tran = BoundParams::from_lattice_constants(BoundKind::TranKBody, lat, a, {0}, {9},
                                                    mu, xi);
    BoundFunction f = [&](double t, double r) { return eval_bound(base, t, r); };
    const double phi_max = 2.0;
    double lo = 1e300, hi = 0.0;
    for (double r = 3.0; r <= 8.0; r += 1.0)
      for (double t = 1.0; t <= xi_s * r; t += 0.25) {
        const double s = time_slice_transform(f, phi_max, t, r, 1.0, xi_s);
        const double ratio = s / eval_bound(tran, t, r);
        CHECK(ratio <= 1.0 + 1e-12);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    const double spread = std::pow(xi_s, -std::abs(a - 2.0));
    CHECK(hi / lo <= spread * (1.0 + 1e-9));
  }
}

TEST_CASE("hopping convolution") {
  auto lat = Lattice::chain(3);
  CHECK(hopping_convolution(lat, 2.0, 2, 0, 2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(hopping_convolution(lat, 2.0, 0, 1, 1) == 1.0);
  CHECK(hopping_convolution(lat, 2.0, 0, 0, 1) == 0.0);
  CHECK(hopping_convolution(lat, 2.0, 1, 0, 2) == doctest::Approx(0.25));
  CHECK_THROWS_AS(hopping_convolution(lat, 2.0, -1, 0, 1), DomainError);
}

TEST_CASE("exhaustive chain sums sit under the convolution") {
  for (int n : {3, 5}) {
    auto lat = Lattice::chain(n);
    auto h = ising(n, 2.0, 0.5);
    auto s = hk_series_oracle(h, lat, 2.0, {0}, {n - 1}, 0.3, 4);
    REQUIRE(s.chain_sums.size() == 4);
    for (int k = 0; k < 4; ++k) {
      CAPTURE(k);
      CHECK(s.chain_sums[k] > 0.0);
      CHECK(s.chain_sums[k] <= s.convolution_sums[k] * (1.0 + 1e-12));
    }
    CHECK(s.series_value <= s.convolution_value);
    CHECK(hk_series_oracle(h, lat, 2.0, {0}, {n - 1}, 0.0, 2).series_value == 0.0);
  }
  CHECK_THROWS_AS(hk_series_oracle(ising(7, 2.0, 0.5), Lattice::chain(7), 2.0, {0}, {6}, 1.0, 2),
                  ResourceError);
}

TEST_CASE("measured commutator for a single coupling") {
  auto h = zz(0, 1, 1.0);
  auto a = OperatorSum::single(0, Pauli::X);
  auto b = OperatorSum::single(1, Pauli::X);
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.05 * k);
  auto c = measure_commutator(h, a, b, times, range(2));
  REQUIRE(c.grid.size() == times.size());
  for (const auto& p : c.grid)
    CHECK(p.value == doctest::Approx(2.0 * std::abs(std::sin(2.0 * p.t))).epsilon(1e-12));
  auto zero = measure_commutator(OperatorSum{}, a, b, times, range(2));
  for (const auto& p : zero.grid) CHECK(p.value == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(measure_commutator(h, a, a, times, range(2)), DomainError);
}

TEST_CASE("contour crossing") {
  auto h = zz(0, 1, 1.0);
  std::vector<double> times;
  for (int k = 0; k <= 4000; ++k) times.push_back(1e-4 * k);
  auto c = measure_commutator(h, OperatorSum::single(0, Pauli::X),
                              OperatorSum::single(1, Pauli::X), times, range(2));
  auto cont = light_cone_contour(c, 1.0);
  REQUIRE(cont.size() == 1);
  CHECK(cont[0].t_star == doctest::Approx(std::numbers::pi / 12.0).epsilon(1e-6));

  ConeSeries flat;
  for (double t : {0.0, 1.0, 2.0}) flat.grid.push_back({t, 1.0, 0.0});
  CHECK(light_cone_contour(flat, 0.1).empty());
  CHECK_THROWS_AS(light_cone_contour(flat, 0.0), DomainError);
}

TEST_CASE("light cone batch matches single targets") {
  const int n = 6;
  auto h = ising(n, 3.0, 0.5);
  auto a = OperatorSum::single(0, Pauli::X);
  std::vector<std::pair<double, OperatorSum>> targets;
  for (int r = 2; r < n; ++r) targets.push_back({double(r), OperatorSum::single(r, Pauli::X)});
  std::vector<double> times{0.0, 0.5, 1.0};
  auto batch = measure_light_cone(h, a, targets, times, range(n));
  REQUIRE(batch.grid.size() == targets.size() * times.size());
  for (const auto& [r, b] : targets) {
    auto single = measure_commutator(h, a, b, times, range(n));
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const auto& p = batch.grid[(int(r) - 2) * times.size() + ti];
      CHECK(p.r == r);
      CHECK(p.value == doctest::Approx(single.grid[ti].value).epsilon(1e-10));
    }
  }
}

}  // TEST_SUITE
