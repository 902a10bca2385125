// Microbenchmarks for the exact-arithmetic kernels: fraction-free nullspace,
// supercommutant solves, normal-ordered products, and the Fock action.

#include <benchmark/benchmark.h>

#include <random>

#include "spodual/invariants.hpp"
#include "spodual/tables.hpp"

using namespace spodual;
using R = Rational;

namespace {

Mat<R> random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Mat<R> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = R(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
  return m;
}

void bm_nullspace_bareiss(benchmark::State& state) {
  auto m = random_matrix(state.range(0), state.range(0) + 4, 17);
  for (auto _ : state) benchmark::DoNotOptimize(nullspace(m));
}

void bm_spo_ambient(benchmark::State& state) {
  std::size_t n = state.range(0);
  std::vector<Parity> par(2 * n, 0);
  par.insert(par.end(), 2 * n, 1);
  Mat<R> g(4 * n, 4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = R(1);
    g(n + i, i) = R(-1);
    g(2 * n + i, 3 * n + i) = R(1);
    g(3 * n + i, 2 * n + i) = R(1);
  }
  BilinearSpace<R> e(SuperSpace(par), g);
  for (auto _ : state) benchmark::DoNotOptimize(spo_ambient(e));
}

void bm_supercommutant_q1(benchmark::State& state) {
  auto row = builtin_table_rows()[14];  // q(1,R) pair
  auto inst = build_row_real(row);
  auto ambient = spo_ambient(inst.e);
  for (auto _ : state) benchmark::DoNotOptimize(supercommutant(inst.g, ambient));
}

void bm_wc_mul(benchmark::State& state) {
  std::vector<Parity> par = {0, 0, 1, 1};
  Mat<R> g(4, 4);
  g(0, 1) = R(1);
  g(1, 0) = R(-1);
  g(2, 3) = R(1);
  g(3, 2) = R(1);
  auto alg = WCAlgebra<R>::make(SuperSpace(par), g);
  std::mt19937 rng(5);
  auto monos = monomials_up_to(2, 2, 4);
  WCElement<R> a(alg), b(alg);
  for (int t = 0; t < 6; ++t) {
    a.add_term(monos[rng() % monos.size()], R(static_cast<long>(rng() % 5) - 2));
    b.add_term(monos[rng() % monos.size()], R(static_cast<long>(rng() % 5) - 2));
  }
  for (auto _ : state) benchmark::DoNotOptimize(wc_mul(a, b));
}

void bm_fock_act(benchmark::State& state) {
  std::vector<Parity> par = {0, 0, 1, 1};
  Mat<R> g(4, 4);
  g(0, 1) = R(1);
  g(1, 0) = R(-1);
  g(2, 3) = R(1);
  g(3, 2) = R(1);
  BilinearSpace<R> e(SuperSpace(par), g);
  auto alg = WCAlgebra<R>::make(e.space, e.gram);
  auto fock = FockBasis<R>::make(alg, e, {0, 2}, {1, 3}, state.range(0));
  auto ambient = spo_ambient(e);
  auto b = beta<R>(alg, ambient.basis[0], ambient.parities[0]);
  for (auto _ : state) benchmark::DoNotOptimize(fock_act(b, fock));
}

}  // namespace

BENCHMARK(bm_nullspace_bareiss)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(bm_spo_ambient)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(bm_supercommutant_q1);
BENCHMARK(bm_wc_mul);
BENCHMARK(bm_fock_act)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
