#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semalign/item_labels.hpp"
#include "semalign/semsim.hpp"

namespace semalign {

/// Reads `{"items": [{"id", "expected": [..], "predicted": [..]}]}`.
/// Items come back in file order. Throws ParseError, DuplicateLabelError or
/// DuplicateItemIdError.
std::vector<ItemLabels> load_items(std::istream& source);

/// Reads precomputed similarity matrices, one record per item:
/// `{"item", "measure": {"name","min","max"}, "rows", "cols", "cells"}`.
/// Accepts a JSON array of records, `{"matrices": [...]}`, or records
/// concatenated one after another (JSON lines). The result follows the
/// order of `items`. Throws MissingItemError, LabelSetMismatchError,
/// OutOfBoundsCellError, DuplicateItemIdError or ParseError.
std::vector<SimilarityMatrix> load_precomputed(
    std::istream& source, const std::vector<ItemLabels>& items);

/// Reads a closed class set, either a JSON array of strings or one label
/// per line (blank lines ignored).
LabelSet load_vocabulary(std::istream& source);

std::string items_to_json(const std::vector<ItemLabels>& items);

/// One compact JSON record per matrix, no trailing newline. Cells are
/// rounded to `decimals` places when given.
std::string matrix_to_json(const SimilarityMatrix& m,
                           std::optional<int> decimals = 3);

/// Rounds half away from zero to `decimals` places.
double round_to(double value, int decimals);

}  // namespace semalign
