// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qpriv/inner_product.hpp"
#include "qpriv/pir_classical.hpp"
#include "qpriv/pir_entangled.hpp"
#include "qpriv/pir_quantum.hpp"
#include "qpriv/privacy.hpp"

namespace {

using namespace qpriv;

void bm_ip_run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Protocol p = build_ip_protocol(n);
  const std::string x = p.alphabet[0].back();
  const std::string y = p.alphabet[1].front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_honest(p, x, y));
  }
}
BENCHMARK(bm_ip_run)->DenseRange(1, 6);

void bm_ip_privacy_loss(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Protocol p = build_ip_protocol(n);
  JointDistribution mu = JointDistribution::uniform(p.alphabet[0], p.alphabet[1]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(privacy_loss(p, mu, Party::P0).total);
  }
}
BENCHMARK(bm_ip_privacy_loss)->DenseRange(1, 4);

void bm_qpir_run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Protocol p = build_qpir(two_server_xor_scheme(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_honest(p, "1", p.alphabet[1].back()));
  }
}
BENCHMARK(bm_qpir_run)->DenseRange(2, 4);

void bm_ppir_run(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  Protocol p = build_ppir(ell);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_honest(p, "1", p.alphabet[1].back()));
  }
}
BENCHMARK(bm_ppir_run)->DenseRange(1, 3);

void bm_classical_verify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ClassicalPirScheme scheme = two_server_xor_scheme(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_scheme(scheme).ok);
  }
}
BENCHMARK(bm_classical_verify)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
