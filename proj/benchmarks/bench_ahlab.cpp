#include <benchmark/benchmark.h>

#include "ahlab/sylvester.hpp"
#include "ahlab/verifier.hpp"

using namespace ahlab;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(f, rng);
  }
  return m;
}

void BM_RankPrime(benchmark::State& state) {
  const PrimeField f;
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(f, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankPrime)->Arg(64)->Arg(256)->Arg(512);

void BM_RankRational(benchmark::State& state) {
  const Rationals q;
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(q, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankRational)->Arg(16)->Arg(32)->Arg(64);

void BM_HilbertDoublePoints(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0)), d = static_cast<unsigned>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  HilbertOptions opt;
  opt.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_double_points(n, d, k, opt));
}
BENCHMARK(BM_HilbertDoublePoints)->Args({3, 6, 21})->Args({3, 9, 55})->Args({9, 4, 72})->Unit(benchmark::kMillisecond);

void BM_Certificate(benchmark::State& state) {
  const CaseId c{static_cast<unsigned>(state.range(0)), static_cast<unsigned>(state.range(1)),
                 static_cast<std::size_t>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(check_certificate(build_certificate(c)));
}
BENCHMARK(BM_Certificate)->Args({3, 6, 21})->Args({5, 8, 214})->Unit(benchmark::kMillisecond);

void BM_SylvesterDecompose(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  std::vector<mpq_class> c;
  std::vector<std::pair<mpq_class, mpq_class>> forms;
  for (unsigned i = 0; i <= m; ++i) {
    c.emplace_back(1 + static_cast<long>(i % 3));
    forms.emplace_back(1, mpq_class(static_cast<long>(i) - static_cast<long>(m / 2), 2));
    forms.back().second.canonicalize();
  }
  const auto f = power_sum(2 * m + 1, c, forms);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_odd(f));
}
BENCHMARK(BM_SylvesterDecompose)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
