#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalign/alignment.hpp"
#include "semalign/item_labels.hpp"

namespace semalign {

/// Label of the sentinel row that counts expected labels left unmatched.
inline constexpr const char* kNoValueRow = "NO_VALUE";
/// Header of the optional column counting unmatched predicted labels.
inline constexpr const char* kSpuriousColumn = "SPURIOUS";

/// Row and column labels of a confusion matrix. Rows are the label
/// vocabulary (sorted), columns the labels seen as expected (sorted).
struct Scaffold {
  LabelSet rows;
  LabelSet cols;

  friend bool operator==(const Scaffold&, const Scaffold&) = default;
};

/// Builds the scaffold of `items`. When `vocabulary` is given it replaces
/// the union of all labels as the row set and must cover every label, else
/// VocabularyMismatchError.
Scaffold make_scaffold(std::span<const ItemLabels> items,
                       const std::optional<LabelSet>& vocabulary = {});

class ConfusionMatrix {
 public:
  using Count = std::uint64_t;

  explicit ConfusionMatrix(Scaffold scaffold, bool spurious_column = false);

  const Scaffold& scaffold() const noexcept { return scaffold_; }
  /// Vocabulary rows; the NO_VALUE row is addressed separately.
  std::size_t row_count() const noexcept { return scaffold_.rows.size(); }
  std::size_t col_count() const noexcept { return scaffold_.cols.size(); }
  bool has_spurious_column() const noexcept { return spurious_column_; }

  /// counts[predicted][expected].
  Count at(std::size_t row, std::size_t col) const {
    return counts_[row * col_count() + col];
  }
  Count no_value(std::size_t col) const { return no_value_[col]; }
  Count spurious(std::size_t row) const { return spurious_[row]; }
  Count unmatched_predicted_total() const noexcept { return unmatched_total_; }

  /// Label-addressed lookup; `predicted` may be kNoValueRow.
  Count count(const std::string& predicted, const std::string& expected) const;

  /// Adds one item's alignment. Throws VocabularyMismatchError if a label is
  /// outside the scaffold.
  void add(const AlignmentSet& alignment);

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  friend ConfusionMatrix merge(const ConfusionMatrix&, const ConfusionMatrix&);

  Scaffold scaffold_;
  bool spurious_column_ = false;
  std::vector<Count> counts_;
  std::vector<Count> no_value_;
  std::vector<Count> spurious_;  // sized to rows even when not rendered
  Count unmatched_total_ = 0;
};

/// counts[p][e] += 1 per pair, counts[NO_VALUE][e] += 1 per unmatched
/// expected label; unmatched predicted labels go to the spurious column.
ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold,
                           bool spurious_column = false);

/// Cellwise sum. Throws ScaffoldMismatchError unless both matrices share
/// the same scaffold and spurious-column setting.
ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b);

enum class MatrixFormat { Csv, Json };

/// Byte-deterministic rendering. CSV: header `"",<cols...>`, one line per
/// vocabulary row then NO_VALUE, trailing newline.
std::string render(const ConfusionMatrix& m, MatrixFormat format);

struct ClassCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  /// nullopt when the ratio is 0/0.
  std::optional<double> precision() const;
  std::optional<double> recall() const;
  std::optional<double> f1() const;
};

struct ClassMetrics {
  std::map<ConceptId, ClassCounts> per_class;
  double hamming_loss = 0.0;
  double micro_accuracy = 0.0;
};

/// Set-based TP/FP/FN/TN per class over `vocabulary`, plus Hamming loss
/// and micro accuracy. Throws EmptyDatasetError on no items or an empty
/// vocabulary, VocabularyMismatchError if an item label is not covered.
ClassMetrics class_metrics(std::span<const ItemLabels> items,
                           const LabelSet& vocabulary);

/// `{"per_class": {...}, "hamming_loss": r, "micro_accuracy": r}`; 0/0
/// ratios are written as the string "undef".
std::string render_metrics(const ClassMetrics& metrics);

}  // namespace semalign
