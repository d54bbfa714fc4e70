#pragma once

#include <span>
#include <vector>

#include "semalign/alignment.hpp"
#include "semalign/confusion.hpp"
#include "semalign/semsim.hpp"
#include "semalign/taxonomy.hpp"

// Per-item batch kernels. Each kernel exists twice: an OpenMP version that
// maps items across `jobs` threads, and a serial reference used by the tests
// and the benchmark as the ground truth. Both return results in item order,
// and the parallel versions are required to be bit-identical to the serial
// ones for every `jobs`.

namespace semalign {

namespace serial {

std::vector<SimilarityMatrix> compute_matrices(const Taxonomy& t,
                                               std::span<const ItemLabels> items,
                                               MeasureKind kind);
std::vector<AlignmentSet> align_all(std::span<const SimilarityMatrix> matrices,
                                    double threshold);
ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold, bool spurious_column);

}  // namespace serial

namespace parallel {

/// Throws ConfigError if `jobs` < 1. When several items fail, the error of
/// the first failing item (in item order) is rethrown.
std::vector<SimilarityMatrix> compute_matrices(const Taxonomy& t,
                                               std::span<const ItemLabels> items,
                                               MeasureKind kind, int jobs);
std::vector<AlignmentSet> align_all(std::span<const SimilarityMatrix> matrices,
                                    double threshold, int jobs);
/// Per-thread partial matrices over contiguous item blocks, merged in block
/// order.
ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold, bool spurious_column,
                           int jobs);

}  // namespace parallel

}  // namespace semalign
