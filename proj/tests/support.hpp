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

#pragma once

#include <Eigen/Dense>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "floq/pauli.hpp"

namespace floq::testing {

using Mat = Eigen::MatrixXcd;

inline Mat pauli_2x2(Pauli p) {
  Mat m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Kronecker-product image on sites 0..n-1, site 0 leftmost.
inline Mat kron_image(const OperatorSum& a, int n) {
  Mat out = Mat::Zero(1 << n, 1 << n);
  for (const auto& t : a.terms()) {
    Mat m = Mat::Identity(1, 1);
    for (int s = 0; s < n; ++s) {
      Mat next = Eigen::kroneckerProduct(m, pauli_2x2(t.string.at(s))).eval();
      m = next;
    }
    out += t.coefficient * m;
  }
  return out;
}

inline OperatorSum random_operator(std::mt19937_64& rng, int n, int terms, int max_weight,
                                   bool hermitian = false) {
  std::uniform_int_distribution<int> site(0, n - 1), letter(1, 3), weight(1, max_weight);
  std::normal_distribution<double> coef;
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) {
    PauliString s;
    const int w = weight(rng);
    for (int j = 0; j < w; ++j) {
      const int at = site(rng);
      s.set(at, static_cast<Pauli>(letter(rng)));
    }
    const double re = coef(rng);
    const double im = hermitian ? 0.0 : coef(rng);
    out.push_back({s, Complex(re, im)});
  }
  return OperatorSum(std::move(out));
}

}  // namespace floq::testing
