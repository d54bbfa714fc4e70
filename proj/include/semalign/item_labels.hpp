#pragma once

#include <string>

#include "semalign/concept_id.hpp"

namespace semalign {

/// Expected and predicted label sets of one evaluated item. Both sets are
/// sorted and duplicate-free; either may be empty.
struct ItemLabels {
  std::string id;
  LabelSet expected;
  LabelSet predicted;

  friend bool operator==(const ItemLabels&, const ItemLabels&) = default;
};

/// Sorts `labels` and throws DuplicateLabelError naming `context` if any
/// label occurs twice.
LabelSet make_label_set(std::vector<ConceptId> labels,
                        const std::string& context);

}  // namespace semalign
