// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "qpriv/linalg.hpp"

namespace {

using namespace qpriv;

PureState random_pure(const RegisterLayout& layout, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(layout.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  v /= v.norm();
  return PureState(layout, std::move(v));
}

void bm_partial_trace_pure(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  RegisterLayout layout({{"A", width / 2}, {"B", width - width / 2}});
  std::mt19937 rng(1);
  PureState psi = random_pure(layout, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(psi, {"A"}));
  }
}
BENCHMARK(bm_partial_trace_pure)->Arg(8)->Arg(12)->Arg(16)->Arg(18);

void bm_entropy(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  RegisterLayout layout({{"A", width}, {"B", width}});
  std::mt19937 rng(2);
  PureState psi = random_pure(layout, rng);
  DensityMatrix rho = partial_trace(psi, {"A"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(von_neumann_entropy(rho));
  }
}
BENCHMARK(bm_entropy)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void bm_cq_block_entropy(benchmark::State& state) {
  const int members = static_cast<int>(state.range(0));
  RegisterLayout layout({{"A", 4}, {"B", 4}});
  std::mt19937 rng(3);
  std::vector<CqState::Member> list;
  for (int i = 0; i < members; ++i) {
    list.push_back({{std::to_string(i)}, 1.0 / members, random_pure(layout, rng)});
  }
  CqState cq({"X"}, layout, list);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cq_entropy(cq, {"X", "A"}));
  }
}
BENCHMARK(bm_cq_block_entropy)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
