#include <benchmark/benchmark.h>

#include <random>

#include "hfg/action.hpp"
#include "hfg/disk.hpp"

using namespace hfg;

namespace {

HeegaardDiagram diagonal_grid(int n) {
  std::vector<int> o;
  for (int i = 0; i < n; ++i) o.push_back(i);
  return from_grid(n, o);
}

PolyMatrix random_poly_matrix(int n, int vars, std::mt19937_64& rng) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly p;
      for (int k = 0; k < 3; ++k)
        if (rng() % 2) p += Poly::var(static_cast<int>(rng() % vars), 1 + static_cast<int>(rng() % 2));
      if (rng() % 2) p += Poly::one();
      m.at(i, j) = p;
    }
  return m;
}

BitMatrix random_bits(int rows, int cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng() % 2) m.set(i, j, true);
  return m;
}

template <bool Parallel>
void BM_DiskTable(benchmark::State& state) {
  auto h = diagonal_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto t = Parallel ? omp::disk_table(h, {}) : serial::disk_table(h, {});
    benchmark::DoNotOptimize(t.disks.data());
  }
}

template <bool Parallel>
void BM_Multiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  auto a = random_poly_matrix(n, 3, rng), b = random_poly_matrix(n, 3, rng);
  const Truncation t = Truncation::total(6);
  for (auto _ : state) {
    auto c = Parallel ? omp::multiply(a, b, t) : serial::multiply(a, b, t);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_Gf2Rank(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  auto m = random_bits(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? omp::rank(m) : serial::rank(m));
}

template <bool Parallel>
void BM_TowerEvaluate(benchmark::State& state) {
  auto h = diagonal_grid(static_cast<int>(state.range(0)));
  auto dc = compute_complex(h, Flavor::Minus);
  auto ctx = diagram_context(dc, {}, Truncation::total(4));
  Tower tw(ctx, {"a", "b", "c", "d"}, {"O0", "O0", "O0", "O0"});
  std::vector<Step> word{plus_step("d"), hop_step("a", "b"), hop_step("b", "c"), hop_step("c", "d"),
                         hop_step("d", "O0"), minus_step("a")};
  for (auto _ : state) {
    auto m = Parallel ? omp::evaluate(tw, {"a", "b", "c"}, word) : serial::evaluate(tw, {"a", "b", "c"}, word);
    benchmark::DoNotOptimize(m.m);
  }
}

}  // namespace

BENCHMARK(BM_DiskTable<false>)->Name("disk_table/serial")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiskTable<true>)->Name("disk_table/omp")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multiply<false>)->Name("multiply/serial")->Arg(32)->Arg(96);
BENCHMARK(BM_Multiply<true>)->Name("multiply/omp")->Arg(32)->Arg(96);
BENCHMARK(BM_Gf2Rank<false>)->Name("gf2_rank/serial")->Arg(512)->Arg(2048);
BENCHMARK(BM_Gf2Rank<true>)->Name("gf2_rank/omp")->Arg(512)->Arg(2048);
BENCHMARK(BM_TowerEvaluate<false>)->Name("tower_evaluate/serial")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TowerEvaluate<true>)->Name("tower_evaluate/omp")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
