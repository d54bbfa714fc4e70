// Serial reference vs OpenMP kernels on a synthetic taxonomy and dataset.

#include <benchmark/benchmark.h>

#include <random>

#include "semalign/kernels.hpp"

using namespace semalign;

namespace {

struct Workload {
  Taxonomy taxonomy;
  std::vector<ItemLabels> items;
};

Taxonomy synthetic_taxonomy(std::mt19937_64& rng, int n) {
  std::vector<Concept> concepts;
  std::uniform_int_distribution<int> feature(0, 63);
  for (int i = 0; i < n; ++i) {
    Concept c;
    c.id = ConceptId("c" + std::to_string(i));
    c.lemmas = {"lemma" + std::to_string(i % 97), "lemma" + std::to_string(i % 13)};
    for (int k = 0; k < 6; ++k) c.features.push_back("f" + std::to_string(feature(rng)));
    if (i > 0) {
      std::uniform_int_distribution<int> pick(std::max(0, i - 40), i - 1);
      c.parents.emplace_back("c" + std::to_string(pick(rng)));
      if (i > 2 && i % 3 == 0) {
        const int second = pick(rng);
        if (c.parents.front().str() != "c" + std::to_string(second))
          c.parents.emplace_back("c" + std::to_string(second));
      }
    }
    concepts.push_back(std::move(c));
  }
  return Taxonomy::build(ConceptId("c0"), concepts);
}

const Workload& workload() {
  static const Workload w = [] {
    std::mt19937_64 rng(7);
    const int n = 2000;
    Taxonomy t = synthetic_taxonomy(rng, n);
    std::vector<ItemLabels> items;
    std::uniform_int_distribution<int> pick(0, n - 1), size(4, 24);
    for (int i = 0; i < 512; ++i) {
      ItemLabels item;
      item.id = std::to_string(i);
      std::set<ConceptId> e, p;
      for (int k = size(rng); k > 0; --k) e.insert(ConceptId("c" + std::to_string(pick(rng))));
      for (int k = size(rng); k > 0; --k) p.insert(ConceptId("c" + std::to_string(pick(rng))));
      item.expected.assign(e.begin(), e.end());
      item.predicted.assign(p.begin(), p.end());
      items.push_back(std::move(item));
    }
    return Workload{std::move(t), std::move(items)};
  }();
  return w;
}

void BM_ComputeSerial(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::compute_matrices(w.taxonomy, w.items, MeasureKind::Feature));
}

void BM_ComputeParallel(benchmark::State& state) {
  const auto& w = workload();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        parallel::compute_matrices(w.taxonomy, w.items, MeasureKind::Feature, jobs));
}

void BM_AlignSerial(benchmark::State& state) {
  const auto& w = workload();
  const auto matrices = serial::compute_matrices(w.taxonomy, w.items, MeasureKind::Feature);
  for (auto _ : state) benchmark::DoNotOptimize(serial::align_all(matrices, 1.5));
}

void BM_AlignParallel(benchmark::State& state) {
  const auto& w = workload();
  const auto matrices = serial::compute_matrices(w.taxonomy, w.items, MeasureKind::Feature);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::align_all(matrices, 1.5, jobs));
}

}  // namespace

BENCHMARK(BM_ComputeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlignParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
