#include "semalign/semsim.hpp"

#include <cmath>
#include <numeric>

#include "semalign/errors.hpp"

namespace semalign {

void MeasureDescriptor::check() const {
  if (!std::isfinite(min_value) || !std::isfinite(max_value) ||
      !(min_value < max_value))
    throw ParseError("measure '" + name + "' needs finite min < max");
}

MeasureDescriptor descriptor_for(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Feature:
      return {"feature", 0.0, 3.0};
    case MeasureKind::Path:
      return {"path", 0.0, 1.0};
  }
  return {};
}

std::optional<MeasureKind> parse_measure_kind(std::string_view name) {
  if (name == "feature") return MeasureKind::Feature;
  if (name == "path") return MeasureKind::Path;
  return std::nullopt;
}

namespace {

double alpha_from_depths(int da, int db) {
  return static_cast<double>(std::min(da, db)) / static_cast<double>(da + db);
}

}  // namespace

double alpha(const Taxonomy& t, const ConceptId& a, const ConceptId& b) {
  return alpha_from_depths(t.depth(a), t.depth(b));
}

double feature_similarity_at(const Taxonomy& t, Taxonomy::Index a,
                             Taxonomy::Index b) {
  const double w = alpha_from_depths(t.depth_at(a), t.depth_at(b));
  const Concept& ca = t.at(a);
  const Concept& cb = t.at(b);
  return tversky(ca.lemmas, cb.lemmas, w) +
         tversky(ca.features, cb.features, w) +
         tversky(t.neighborhood1_at(a), t.neighborhood1_at(b), w);
}

double path_similarity_at(const Taxonomy& t, Taxonomy::Index a,
                          Taxonomy::Index b) {
  const int d = t.depth_at(t.lcs_at(a, b));
  return 2.0 * d / static_cast<double>(t.depth_at(a) + t.depth_at(b));
}

double feature_similarity(const Taxonomy& t, const ConceptId& a,
                          const ConceptId& b) {
  return feature_similarity_at(t, t.index_of(a), t.index_of(b));
}

double path_similarity(const Taxonomy& t, const ConceptId& a,
                       const ConceptId& b) {
  return path_similarity_at(t, t.index_of(a), t.index_of(b));
}

double similarity(const Taxonomy& t, MeasureKind kind, const ConceptId& a,
                  const ConceptId& b) {
  return kind == MeasureKind::Feature ? feature_similarity(t, a, b)
                                      : path_similarity(t, a, b);
}

SimilarityMatrix::SimilarityMatrix(std::string item_id,
                                   MeasureDescriptor measure,
                                   std::vector<ConceptId> rows,
                                   std::vector<ConceptId> cols,
                                   std::vector<double> cells)
    : item_id_(std::move(item_id)), measure_(std::move(measure)) {
  if (cells.size() != rows.size() * cols.size())
    throw ParseError("matrix for item '" + item_id_ + "' has " +
                     std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(rows.size() * cols.size()));

  auto order_of = [](const std::vector<ConceptId>& labels) {
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return labels[x] < labels[y];
    });
    return order;
  };
  const auto row_order = order_of(rows);
  const auto col_order = order_of(cols);

  rows_.reserve(rows.size());
  for (std::size_t r : row_order) rows_.push_back(rows[r]);
  cols_.reserve(cols.size());
  for (std::size_t c : col_order) cols_.push_back(cols[c]);
  for (const LabelSet* side : {&rows_, &cols_})
    if (auto dup = std::adjacent_find(side->begin(), side->end());
        dup != side->end())
      throw DuplicateLabelError("matrix for item '" + item_id_ +
                                "' repeats label '" + dup->str() + "'");

  cells_.reserve(cells.size());
  for (std::size_t r : row_order)
    for (std::size_t c : col_order) cells_.push_back(cells[r * cols.size() + c]);
}

std::optional<std::size_t> SimilarityMatrix::row_of(const ConceptId& id) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), id);
  if (it == rows_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::optional<std::size_t> SimilarityMatrix::col_of(const ConceptId& id) const {
  auto it = std::lower_bound(cols_.begin(), cols_.end(), id);
  if (it == cols_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - cols_.begin());
}

double SimilarityMatrix::cell(const ConceptId& expected,
                              const ConceptId& predicted) const {
  const auto r = row_of(expected);
  const auto c = col_of(predicted);
  if (!r || !c)
    throw LabelNotInMatrixError("matrix for item '" + item_id_ +
                                "' has no cell (" + expected.str() + ", " +
                                predicted.str() + ")");
  return at(*r, *c);
}

void SimilarityMatrix::check_bounds() const {
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      const double v = at(r, c);
      if (!std::isfinite(v) || v < measure_.min_value ||
          v > measure_.max_value)
        throw OutOfBoundsCellError(
            "item '" + item_id_ + "' cell (" + rows_[r].str() + ", " +
            cols_[c].str() + ") = " + std::to_string(v) + " outside [" +
            std::to_string(measure_.min_value) + ", " +
            std::to_string(measure_.max_value) + "] of measure '" +
            measure_.name + "'");
    }
}

SimilarityMatrix similarity_matrix(const Taxonomy& t, const ItemLabels& item,
                                   MeasureKind kind) {
  std::vector<Taxonomy::Index> row_idx, col_idx;
  for (const auto& e : item.expected) row_idx.push_back(t.index_of(e));
  for (const auto& p : item.predicted) col_idx.push_back(t.index_of(p));

  std::vector<double> cells;
  cells.reserve(row_idx.size() * col_idx.size());
  for (auto r : row_idx)
    for (auto c : col_idx)
      cells.push_back(kind == MeasureKind::Feature
                          ? feature_similarity_at(t, r, c)
                          : path_similarity_at(t, r, c));
  return SimilarityMatrix(item.id, descriptor_for(kind), item.expected,
                          item.predicted, std::move(cells));
}

}  // namespace semalign
