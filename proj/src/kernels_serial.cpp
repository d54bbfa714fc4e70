#include "semalign/kernels.hpp"

namespace semalign::serial {

std::vector<SimilarityMatrix> compute_matrices(const Taxonomy& t,
                                               std::span<const ItemLabels> items,
                                               MeasureKind kind) {
  std::vector<SimilarityMatrix> out;
  out.reserve(items.size());
  for (const ItemLabels& item : items)
    out.push_back(similarity_matrix(t, item, kind));
  return out;
}

std::vector<AlignmentSet> align_all(std::span<const SimilarityMatrix> matrices,
                                    double threshold) {
  std::vector<AlignmentSet> out;
  out.reserve(matrices.size());
  for (const SimilarityMatrix& m : matrices)
    out.push_back(align_item(m, threshold));
  return out;
}

ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold, bool spurious_column) {
  return semalign::accumulate(alignments, scaffold, spurious_column);
}

}  // namespace semalign::serial
