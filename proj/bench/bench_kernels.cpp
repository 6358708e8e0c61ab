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

// Serial reference against the OpenMP kernels.
//
//   floq_bench --benchmark_filter=product

#include <benchmark/benchmark.h>

#include <random>

#include "floq/kernels.hpp"

using namespace floq;
namespace k = floq::kernels;

namespace {

std::vector<Term> random_terms(std::uint64_t seed, int n, int count, int max_weight) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> site(0, n - 1), letter(1, 3), weight(1, max_weight);
  std::normal_distribution<double> coef;
  std::vector<Term> out;
  for (int t = 0; t < count; ++t) {
    PauliString s;
    const int w = weight(rng);
    for (int j = 0; j < w; ++j) {
      const int at = site(rng);
      s.set(at, static_cast<Pauli>(letter(rng)));
    }
    const double re = coef(rng);
    out.push_back({s, Complex(re, 0.0)});
  }
  return out;
}

template <auto Fn>
void product(benchmark::State& state) {
  const auto a = random_terms(1, 12, static_cast<int>(state.range(0)), 4);
  const auto b = random_terms(2, 12, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b, k::ProductMode::Commutator));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Fn>
void fill_matrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto terms = random_terms(3, n, 200, 3);
  std::vector<int> sites(n);
  for (int s = 0; s < n; ++s) sites[s] = s;
  Eigen::MatrixXcd m;
  for (auto _ : state) {
    Fn(terms, sites, m);
    benchmark::DoNotOptimize(m.data());
  }
}

template <auto Fn>
void response_bins(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::vector<Eigen::MatrixXcd> ops;
  for (int o = 0; o < 4; ++o) ops.push_back(Eigen::MatrixXcd::Random(d, d));
  const Eigen::VectorXd e = 4.0 * Eigen::VectorXd::Random(d);
  const Eigen::VectorXd p = Eigen::VectorXd::Random(d).cwiseAbs();
  std::vector<double> edges;
  for (int j = 0; j <= 32; ++j) edges.push_back(-8.0 + 0.5 * j);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(ops, e, p, edges));
}

}  // namespace

BENCHMARK(product<k::serial::product>)->Name("product/serial")->Arg(256)->Arg(1024);
BENCHMARK(product<k::omp::product>)->Name("product/omp")->Arg(256)->Arg(1024);
BENCHMARK(fill_matrix<k::serial::fill_matrix>)->Name("fill_matrix/serial")->Arg(8)->Arg(10);
BENCHMARK(fill_matrix<k::omp::fill_matrix>)->Name("fill_matrix/omp")->Arg(8)->Arg(10);
BENCHMARK(response_bins<k::serial::response_bins>)->Name("response_bins/serial")->Arg(256);
BENCHMARK(response_bins<k::omp::response_bins>)->Name("response_bins/omp")->Arg(256);

BENCHMARK_MAIN();
