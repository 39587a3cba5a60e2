#include <random>

#include <benchmark/benchmark.h>

#include "lgg/lgg.hpp"

namespace {

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(gen);
  return m;
}

lgg::SparseGraph knn(Eigen::Index n, std::size_t k) {
  return lgg::knn_graph(lgg::FeatureMatrix(gaussian(n, 32, 7)), k, lgg::CosineSimilarity{},
                        lgg::Symmetrize::Union);
}

void BM_KnnGraph(benchmark::State& state) {
  const lgg::FeatureMatrix features(gaussian(state.range(0), 64, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lgg::knn_graph(features, 10, lgg::CosineSimilarity{}, lgg::Symmetrize::Union));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnGraph)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_LaplacianSpectrum(benchmark::State& state) {
  const lgg::SparseGraph g = knn(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(lgg::laplacian_spectrum(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaplacianSpectrum)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_SimoncelliExact(benchmark::State& state) {
  const lgg::SparseGraph g = knn(state.range(0), 10);
  const lgg::GraphSignal s = gaussian(state.range(0), 4, 2);
  const lgg::FilterSpec spec = lgg::ResponseFilter{lgg::Simoncelli{0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(lgg::apply_filter(g, spec, s, lgg::ExactMethod{}));
}
BENCHMARK(BM_SimoncelliExact)->RangeMultiplier(2)->Range(64, 512);

void BM_SimoncelliChebyshev(benchmark::State& state) {
  const lgg::SparseGraph g = knn(state.range(0), 10);
  const lgg::GraphSignal s = gaussian(state.range(0), 4, 2);
  const lgg::FilterSpec spec = lgg::ResponseFilter{lgg::Simoncelli{0.5}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lgg::apply_filter(g, spec, s, lgg::ChebyshevMethod{50}));
  }
}
BENCHMARK(BM_SimoncelliChebyshev)->RangeMultiplier(2)->Range(64, 4096);

void BM_PropagateLabels(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const lgg::SparseGraph g = knn(state.range(0), 10);
  const lgg::PartialLabels labels(n, {0, 1, 2, 3}, {0, 1, 2, 3}, 4);
  const bool closed = state.range(1) == 0;
  for (auto _ : state) {
    if (closed) {
      benchmark::DoNotOptimize(lgg::propagate_labels(g, labels, 0.9, lgg::ClosedForm{}));
    } else {
      benchmark::DoNotOptimize(lgg::propagate_labels(g, labels, 0.9, lgg::Iterative{}));
    }
  }
}
BENCHMARK(BM_PropagateLabels)->ArgsProduct({{256, 1024, 4096}, {0, 1}})->ArgNames({"n", "iterative"});

void BM_TransferSgc(benchmark::State& state) {
  const lgg::FeatureMatrix features(gaussian(state.range(0), 64, 3));
  for (auto _ : state) benchmark::DoNotOptimize(lgg::transfer_sgc(features, 10, 0.5, 2));
}
BENCHMARK(BM_TransferSgc)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
