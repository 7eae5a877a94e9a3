// Microbenchmarks for the hot paths of the corona pipeline: series algebra,
// the expression DAG evaluator, the Cauchy-transform quadrature, and the
// symbolic identity checker.
#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "corona/cauchy.hpp"
#include "corona/corona_disk.hpp"
#include "corona/problem.hpp"
#include "corona/slice_regular.hpp"
#include "corona/sympoly.hpp"

namespace {

corona::QSeries random_qseries(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<corona::Quaternion> c(static_cast<std::size_t>(degree) + 1);
  for (auto& q : c) q = corona::Quaternion(u(rng), u(rng), u(rng), u(rng)) / (degree + 1.0);
  return corona::QSeries(std::move(c));
}

const corona::DiskCoronaProblem& fixture_problem() {
  static const corona::DiskCoronaProblem p = corona::generate_disk_problem(2, 0.5, 4, 7);
  return p;
}

std::shared_ptr<const corona::SmoothSolution> fixture_smooth(int nr) {
  auto grid = corona::make_grid({nr, 4 * nr, 0.995});
  return std::make_shared<corona::SmoothSolution>(fixture_problem(), grid);
}

void BM_StarCoefficientProduct(benchmark::State& state) {
  const auto f = random_qseries(64, 11);
  const auto g = random_qseries(64, 12);
  for (auto _ : state) benchmark::DoNotOptimize(corona::star(f, g));
}
BENCHMARK(BM_StarCoefficientProduct);

void BM_StarPointwiseEval(benchmark::State& state) {
  const auto f = random_qseries(64, 11);
  const auto g = random_qseries(64, 12);
  const corona::Quaternion q(0.3, 0.2, -0.4, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(corona::star_eval_pointwise(f, g, q));
}
BENCHMARK(BM_StarPointwiseEval);

void BM_SeriesHorner(benchmark::State& state) {
  std::vector<corona::Complex> c(65);
  for (int m = 0; m <= 64; ++m) c[static_cast<std::size_t>(m)] = corona::Complex(1.0 / (m + 1), 0.1);
  const corona::CSeries f(std::move(c));
  const corona::Complex z(0.4, -0.3);
  for (auto _ : state) benchmark::DoNotOptimize(f(z));
}
BENCHMARK(BM_SeriesHorner);

void BM_SmoothSolutionBuild(benchmark::State& state) {
  auto grid = corona::make_grid({16, 64, 0.995});
  for (auto _ : state) {
    corona::SmoothSolution s(fixture_problem(), grid);
    benchmark::DoNotOptimize(s.delta_hat_sq());
  }
}
BENCHMARK(BM_SmoothSolutionBuild);

void BM_SmoothPointEval(benchmark::State& state) {
  static const auto s = fixture_smooth(16);
  const corona::Complex z(0.31, -0.42);
  for (auto _ : state) {
    corona::WPointEval ev(z);
    corona::Complex acc(0.0);
    for (int j = 1; j <= s->n(); ++j) acc += ev(s->h(j)).v + ev(s->k(j)).v;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SmoothPointEval);

void BM_CauchyTransformBuild(benchmark::State& state) {
  auto grid = corona::make_grid({64, 256, 0.995});
  for (auto _ : state) {
    corona::CauchyTransform t(corona::GridFn(grid, corona::Complex(1.0)));
    benchmark::DoNotOptimize(t(corona::Complex(0.2, 0.1)));
  }
}
BENCHMARK(BM_CauchyTransformBuild);

void BM_CauchyTransformEval(benchmark::State& state) {
  static const corona::CauchyTransform t(
      corona::GridFn(corona::make_grid({64, 256, 0.995}), corona::Complex(1.0)));
  const corona::Complex z(0.31, -0.42);
  for (auto _ : state) benchmark::DoNotOptimize(t(z));
}
BENCHMARK(BM_CauchyTransformEval);

void BM_HoloSolutionEval(benchmark::State& state) {
  static const auto hs = [] {
    auto smooth = fixture_smooth(32);
    corona::DbarData data(*smooth);
    auto corr = std::make_shared<corona::CorrectionField>(data, smooth->grid(), 1);
    return std::make_shared<corona::HoloSolution>(smooth, corr);
  }();
  const corona::Complex z(0.31, -0.42);
  for (auto _ : state) benchmark::DoNotOptimize(hs->eval(z));
}
BENCHMARK(BM_HoloSolutionEval);

void BM_SymbolicHomogeneous(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(corona::sym::verify_homogeneous_cancellations(n));
}
BENCHMARK(BM_SymbolicHomogeneous)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
