#include <algorithm>
#include <exception>
#include <optional>

#include "semalign/errors.hpp"
#include "semalign/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semalign::parallel {

namespace {

void check_jobs(int jobs) {
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

// Runs fn(i) for i in [0, n) across `jobs` threads. Exceptions cannot leave
// an OpenMP region, so each one is parked in its item slot and the first in
// item order is rethrown afterwards.
template <typename Fn>
void for_each_item(std::size_t n, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<SimilarityMatrix> compute_matrices(const Taxonomy& t,
                                               std::span<const ItemLabels> items,
                                               MeasureKind kind, int jobs) {
  check_jobs(jobs);
  std::vector<SimilarityMatrix> out(items.size());
  for_each_item(items.size(), jobs, [&](std::size_t i) {
    out[i] = similarity_matrix(t, items[i], kind);
  });
  return out;
}

std::vector<AlignmentSet> align_all(std::span<const SimilarityMatrix> matrices,
                                    double threshold, int jobs) {
  check_jobs(jobs);
  std::vector<AlignmentSet> out(matrices.size());
  for_each_item(matrices.size(), jobs, [&](std::size_t i) {
    out[i] = align_item(matrices[i], threshold);
  });
  return out;
}

ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold, bool spurious_column,
                           int jobs) {
  check_jobs(jobs);
  const std::size_t n = alignments.size();
  const std::size_t blocks =
      std::max<std::size_t>(1, std::min<std::size_t>(n, jobs));
  std::vector<std::optional<ConfusionMatrix>> partial(blocks);
  for_each_item(blocks, jobs, [&](std::size_t b) {
    const std::size_t lo = n * b / blocks;
    const std::size_t hi = n * (b + 1) / blocks;
    partial[b] = semalign::accumulate(alignments.subspan(lo, hi - lo),
                                      scaffold, spurious_column);
  });
  ConfusionMatrix total = std::move(*partial[0]);
  for (std::size_t b = 1; b < blocks; ++b) total = merge(total, *partial[b]);
  return total;
}

}  // namespace semalign::parallel
