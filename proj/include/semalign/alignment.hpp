#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semalign/concept_id.hpp"
#include "semalign/semsim.hpp"

namespace semalign {

/// Which label set seeks partners. EXPECTED when there are more predicted
/// than expected labels, PREDICTED otherwise (equality included).
enum class ScanSide { Expected, Predicted };

ScanSide scan_side(std::size_t n_predicted, std::size_t n_expected);

struct AlignmentPair {
  ConceptId expected;
  ConceptId predicted;
  double similarity = 0.0;

  friend bool operator==(const AlignmentPair&, const AlignmentPair&) = default;
};

/// One-to-one partial matching of an item's labels. Pairs are sorted by
/// (expected, predicted); the unmatched sets are sorted.
struct AlignmentSet {
  std::string item_id;
  std::vector<AlignmentPair> pairs;
  LabelSet unmatched_expected;
  LabelSet unmatched_predicted;

  friend bool operator==(const AlignmentSet&, const AlignmentSet&) = default;
};

struct Partner {
  ConceptId id;
  double similarity = 0.0;
};

/// Best partner of scan label `s` on the opposite side of `m`, among
/// partners not in `excluded` whose similarity is at least `threshold`.
/// Ties go to the smallest partner id. Throws LabelNotInMatrixError if `s`
/// is not a label of the scan side.
std::optional<Partner> best_partner(const ConceptId& s,
                                    const SimilarityMatrix& m, ScanSide side,
                                    const LabelSet& excluded,
                                    double threshold);

/// Aligns the expected and predicted labels of one matrix.
///
/// Labels on the scan side propose, in id order, to partners in decreasing
/// similarity (ties by partner id), skipping any partner below `threshold`.
/// A free partner accepts; an engaged one keeps whichever proposer has the
/// higher similarity (on equal similarity, the smaller scan id) and the
/// rejected label moves on to its next candidate. A label that runs out of
/// candidates stays unmatched. Every proposal consumes one candidate, so the
/// loop ends after at most rows * cols proposals.
AlignmentSet align_item(const SimilarityMatrix& m, double threshold);

}  // namespace semalign
