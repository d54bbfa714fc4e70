#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semalign/concept_id.hpp"
#include "semalign/item_labels.hpp"
#include "semalign/taxonomy.hpp"

namespace semalign {

/// Identity and theoretical range of a similarity measure. The alignment
/// threshold is always derived from the range, never fixed.
struct MeasureDescriptor {
  std::string name;
  double min_value = 0.0;  // value for two unrelated terms
  double max_value = 1.0;  // value for two synonyms

  double threshold() const noexcept { return 0.5 * (max_value + min_value); }

  /// Throws ParseError unless min_value < max_value and both are finite.
  void check() const;

  friend bool operator==(const MeasureDescriptor&,
                         const MeasureDescriptor&) = default;
};

enum class MeasureKind { Feature, Path };

MeasureDescriptor descriptor_for(MeasureKind kind);
std::optional<MeasureKind> parse_measure_kind(std::string_view name);

/// Tversky ratio model on two sorted, duplicate-free ranges:
/// |A∩B| / (|A∩B| + α|A\B| + (1-α)|B\A|), and 0 when both are empty.
template <typename RangeA, typename RangeB>
double tversky(const RangeA& a, const RangeB& b, double alpha) {
  std::size_t common = 0;
  auto ia = std::begin(a);
  auto ib = std::begin(b);
  const auto ea = std::end(a);
  const auto eb = std::end(b);
  std::size_t na = 0, nb = 0;
  while (ia != ea && ib != eb) {
    if (*ia < *ib) {
      ++ia, ++na;
    } else if (*ib < *ia) {
      ++ib, ++nb;
    } else {
      ++ia, ++ib, ++na, ++nb, ++common;
    }
  }
  na += static_cast<std::size_t>(std::distance(ia, ea));
  nb += static_cast<std::size_t>(std::distance(ib, eb));
  if (common == 0) return 0.0;
  const double only_a = static_cast<double>(na - common);
  const double only_b = static_cast<double>(nb - common);
  const double c = static_cast<double>(common);
  return c / (c + alpha * only_a + (1.0 - alpha) * only_b);
}

/// Depth-driven asymmetry weight, min(depth) / (depth(a) + depth(b)).
double alpha(const Taxonomy& t, const ConceptId& a, const ConceptId& b);

/// Sum of three Tversky ratios over lemmas, feature terms and radius-1
/// neighborhoods; lies in [0, 3]. Not symmetric in general.
double feature_similarity(const Taxonomy& t, const ConceptId& a,
                          const ConceptId& b);

/// 2 * depth(lcs) / (depth(a) + depth(b)); lies in (0, 1].
double path_similarity(const Taxonomy& t, const ConceptId& a,
                       const ConceptId& b);

double similarity(const Taxonomy& t, MeasureKind kind, const ConceptId& a,
                  const ConceptId& b);

// Index-level kernels; callers guarantee valid indices.
double feature_similarity_at(const Taxonomy& t, Taxonomy::Index a,
                             Taxonomy::Index b);
double path_similarity_at(const Taxonomy& t, Taxonomy::Index a,
                          Taxonomy::Index b);

/// Per-item grid of similarity values, rows = expected labels, columns =
/// predicted labels, cell(e, p) = SemSim(e, p). Labels are stored sorted;
/// the constructor permutes the supplied cells accordingly.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  /// `cells` is row-major in the order of the supplied `rows` and `cols`.
  /// Throws DuplicateLabelError or ParseError (shape).
  SimilarityMatrix(std::string item_id, MeasureDescriptor measure,
                   std::vector<ConceptId> rows, std::vector<ConceptId> cols,
                   std::vector<double> cells);

  const std::string& item_id() const noexcept { return item_id_; }
  const MeasureDescriptor& measure() const noexcept { return measure_; }
  const LabelSet& rows() const noexcept { return rows_; }
  const LabelSet& cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t col_count() const noexcept { return cols_.size(); }

  double at(std::size_t r, std::size_t c) const {
    return cells_[r * cols_.size() + c];
  }
  std::optional<std::size_t> row_of(const ConceptId& id) const;
  std::optional<std::size_t> col_of(const ConceptId& id) const;
  /// Throws LabelNotInMatrixError.
  double cell(const ConceptId& expected, const ConceptId& predicted) const;

  /// Throws OutOfBoundsCellError if any cell is outside the measure range
  /// or not finite.
  void check_bounds() const;

  friend bool operator==(const SimilarityMatrix&,
                         const SimilarityMatrix&) = default;

 private:
  std::string item_id_;
  MeasureDescriptor measure_;
  LabelSet rows_;
  LabelSet cols_;
  std::vector<double> cells_;
};

/// Computes the matrix of `item` under `kind`. Throws UnknownConceptError
/// naming the first label missing from `t`.
SimilarityMatrix similarity_matrix(const Taxonomy& t, const ItemLabels& item,
                                   MeasureKind kind);

}  // namespace semalign
