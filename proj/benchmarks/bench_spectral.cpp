#include <benchmark/benchmark.h>

#include <random>

#include <minkspec/hermitian.hpp>
#include <minkspec/oracle.hpp>
#include <minkspec/secular.hpp>
#include <minkspec/sweep.hpp>

namespace {

using minkspec::SpectralForm;

// Poles spaced 0.5 apart, residues in [0.01, 1], shift in the middle of the poles.
SpectralForm make_form(std::size_t m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> res(0.01, 1.0);
  std::vector<double> mu, d;
  for (std::size_t j = 0; j < m; ++j) {
    mu.push_back(0.5 * static_cast<double>(m - j));
    d.push_back(res(rng));
  }
  return SpectralForm::from_poles(mu, d, 0.25 * static_cast<double>(m));
}

void BM_Jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  minkspec::CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = gauss(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = {gauss(rng), gauss(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(minkspec::hermitian_eigendecomposition(m));
}
BENCHMARK(BM_Jacobi)->Arg(8)->Arg(32)->Arg(128);

void BM_SolveSpectrum(benchmark::State& state) {
  const minkspec::SecularFunction s(make_form(static_cast<std::size_t>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(minkspec::solve_spectrum(s));
}
BENCHMARK(BM_SolveSpectrum)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_AberthOracle(benchmark::State& state) {
  const auto form = make_form(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(minkspec::char_poly_roots_oracle(form));
}
BENCHMARK(BM_AberthOracle)->Arg(4)->Arg(16)->Arg(64);

void BM_CriticalValues(benchmark::State& state) {
  const auto form = make_form(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(minkspec::critical_a_values(form));
}
BENCHMARK(BM_CriticalValues)->Arg(4)->Arg(16)->Arg(64);

void BM_Sweep(benchmark::State& state) {
  const auto form = make_form(8, 5);
  for (auto _ : state) benchmark::DoNotOptimize(minkspec::eigenvalue_trajectories(form, -5.0, 10.0, 200));
}
BENCHMARK(BM_Sweep);

}  // namespace

BENCHMARK_MAIN();
