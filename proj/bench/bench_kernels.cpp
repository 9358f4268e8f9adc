// Serial reference kernels against their OpenMP versions.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "itkit/field.hpp"
#include "itkit/kernels.hpp"
#include "itkit/propagate.hpp"

using namespace itkit;
using kernels::cplx;

namespace {

std::vector<cplx> wave(std::size_t n) {
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(1.0 / (1.0 + 1e-3 * i), 0.01 * i);
  return v;
}

template <bool Parallel>
void BM_apply_phase(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto v = wave(n);
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) ph[i] = 1e-7 * i * i;
  for (auto _ : st) {
    if constexpr (Parallel) kernels::apply_phase(v, ph);
    else kernels::serial::apply_phase(v, ph);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto v = wave(n);
  const auto f = wave(n);
  for (auto _ : st) {
    if constexpr (Parallel) kernels::multiply(v, f);
    else kernels::serial::multiply(v, f);
    benchmark::DoNotOptimize(v.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void BM_squared_norm(benchmark::State& st) {
  const auto v = wave(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    double s = Parallel ? kernels::squared_norm(v) : kernels::serial::squared_norm(v);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_fourier_sum(benchmark::State& st) {
  const Grid g = Grid::centered(3, st.range(0), 0.25);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.point(i).squaredNorm());
  Vec q(3);
  q << 0.3, -0.2, 0.7;
  for (auto _ : st) {
    cplx s = Parallel ? kernels::fourier_sum(g, f, q) : kernels::serial::fourier_sum(g, f, q);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.size()));
}

template <bool Parallel>
void BM_free_kernel_quadrature(benchmark::State& st) {
  const Grid g = Grid::centered(1, st.range(0), 0.1);
  const auto in = wave(g.size());
  std::vector<cplx> out(g.size());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::free_kernel_quadrature(g, in, g, 1.0, 5.0, out);
    else kernels::serial::free_kernel_quadrature(g, in, g, 1.0, 5.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

template <bool Parallel>
void BM_evolve_free_exact(benchmark::State& st) {
  const Grid g = Grid::centered(1, st.range(0), 0.25);
  const ComplexField psi = sample_gaussian(GaussianPacketSpec::one_d(1.0, 0.5), g, Representation::Position);
  for (auto _ : st) {
    ComplexField out = propagate::evolve_free_exact(psi, 1.0, 10.0, Parallel ? Exec::Parallel : Exec::Serial);
    benchmark::DoNotOptimize(out.values.data());
  }
}

}  // namespace

BENCHMARK(BM_apply_phase<false>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_apply_phase<true>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_multiply<false>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_multiply<true>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_squared_norm<false>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_squared_norm<true>)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_fourier_sum<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_fourier_sum<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_free_kernel_quadrature<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_free_kernel_quadrature<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_evolve_free_exact<false>)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_evolve_free_exact<true>)->Arg(1 << 14)->Arg(1 << 18);

BENCHMARK_MAIN();
