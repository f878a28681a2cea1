#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "octoverify/catalog.hpp"
#include "octoverify/chart.hpp"
#include "octoverify/gauss_map.hpp"
#include "octoverify/jacobi.hpp"
#include "octoverify/octonion.hpp"

using namespace octoverify;

namespace {

std::vector<Vec8> random_octonions(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<Vec8> out(n);
  for (Vec8& v : out) {
    for (int i = 0; i < 8; ++i) v[i] = g(rng);
  }
  return out;
}

void BM_TableMultiply(benchmark::State& state) {
  const auto xs = random_octonions(256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(octonion::mul(xs[i % 256], xs[(i + 1) % 256]));
    ++i;
  }
}
BENCHMARK(BM_TableMultiply);

void BM_RecursiveMultiply(benchmark::State& state) {
  const auto xs = random_octonions(256);
  std::vector<CDElement> cd;
  for (const Vec8& v : xs) cd.push_back(CDElement::from_vec8(v));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cd[i % 256] * cd[(i + 1) % 256]);
    ++i;
  }
}
BENCHMARK(BM_RecursiveMultiply);

void BM_SedenionMultiply(benchmark::State& state) {
  const CDElement x = CDElement::basis(4, 3) + CDElement::basis(4, 10);
  const CDElement y = CDElement::basis(4, 6) - CDElement::basis(4, 15);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_SedenionMultiply);

void BM_Jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  SmallMat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  a = (a + a.transpose()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a));
}
BENCHMARK(BM_Jacobi)->DenseRange(2, 7);

void BM_GaussLaplacianPerNode(benchmark::State& state, const char* spec, LaplaceScheme scheme) {
  const SubmanifoldModel model = build_chart(parse_spec(spec));
  const Chart chart = model.chart.with_grid(std::vector<int>(static_cast<std::size_t>(model.dim), 8));
  const ChartField gamma = gauss_map_field(model.hints.fields.front());
  const LaplaceOptions opts{1e-3, false, scheme};
  std::size_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_laplacian(chart, gamma, chart.node(n % chart.node_count()), opts));
    n += 97;
  }
}
BENCHMARK_CAPTURE(BM_GaussLaplacianPerNode, great3_extrinsic, "great:3", LaplaceScheme::extrinsic);
BENCHMARK_CAPTURE(BM_GaussLaplacianPerNode, great3_divergence, "great:3", LaplaceScheme::divergence);
BENCHMARK_CAPTURE(BM_GaussLaplacianPerNode, great6_extrinsic, "great:6", LaplaceScheme::extrinsic);
BENCHMARK_CAPTURE(BM_GaussLaplacianPerNode, clifford_extrinsic, "product:3,3", LaplaceScheme::extrinsic);

}  // namespace

BENCHMARK_MAIN();
