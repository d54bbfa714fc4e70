#include "semalign/confusion.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "semalign/errors.hpp"

namespace semalign {

namespace {

std::optional<std::size_t> find_label(const LabelSet& labels,
                                      const ConceptId& id) {
  auto it = std::lower_bound(labels.begin(), labels.end(), id);
  if (it == labels.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Scaffold make_scaffold(std::span<const ItemLabels> items,
                       const std::optional<LabelSet>& vocabulary) {
  LabelSet all, expected;
  for (const ItemLabels& item : items) {
    all.insert(all.end(), item.expected.begin(), item.expected.end());
    all.insert(all.end(), item.predicted.begin(), item.predicted.end());
    expected.insert(expected.end(), item.expected.begin(), item.expected.end());
  }
  for (LabelSet* s : {&all, &expected}) {
    std::sort(s->begin(), s->end());
    s->erase(std::unique(s->begin(), s->end()), s->end());
  }
  if (!vocabulary) return {std::move(all), std::move(expected)};

  LabelSet rows = *vocabulary;
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  LabelSet missing;
  std::set_difference(all.begin(), all.end(), rows.begin(), rows.end(),
                      std::back_inserter(missing));
  if (!missing.empty())
    throw VocabularyMismatchError("label '" + missing.front().str() +
                                  "' occurs in the dataset but not in the "
                                  "vocabulary");
  return {std::move(rows), std::move(expected)};
}

ConfusionMatrix::ConfusionMatrix(Scaffold scaffold, bool spurious_column)
    : scaffold_(std::move(scaffold)),
      spurious_column_(spurious_column),
      counts_(scaffold_.rows.size() * scaffold_.cols.size(), 0),
      no_value_(scaffold_.cols.size(), 0),
      spurious_(scaffold_.rows.size(), 0) {}

ConfusionMatrix::Count ConfusionMatrix::count(
    const std::string& predicted, const std::string& expected) const {
  const auto col = find_label(scaffold_.cols, ConceptId(expected));
  if (!col)
    throw VocabularyMismatchError("no column '" + expected + "'");
  if (predicted == kNoValueRow) return no_value_[*col];
  const auto row = find_label(scaffold_.rows, ConceptId(predicted));
  if (!row) throw VocabularyMismatchError("no row '" + predicted + "'");
  return at(*row, *col);
}

void ConfusionMatrix::add(const AlignmentSet& alignment) {
  auto col_of = [&](const ConceptId& e) {
    const auto col = find_label(scaffold_.cols, e);
    if (!col)
      throw VocabularyMismatchError("item '" + alignment.item_id +
                                    "': expected label '" + e.str() +
                                    "' is not a matrix column");
    return *col;
  };
  auto row_of = [&](const ConceptId& p) {
    const auto row = find_label(scaffold_.rows, p);
    if (!row)
      throw VocabularyMismatchError("item '" + alignment.item_id +
                                    "': predicted label '" + p.str() +
                                    "' is not in the vocabulary");
    return *row;
  };

  // Resolve everything first so a mismatch leaves the matrix untouched.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (const AlignmentPair& pair : alignment.pairs)
    cells.emplace_back(row_of(pair.predicted), col_of(pair.expected));
  std::vector<std::size_t> missed, spurious;
  for (const ConceptId& e : alignment.unmatched_expected)
    missed.push_back(col_of(e));
  for (const ConceptId& p : alignment.unmatched_predicted)
    spurious.push_back(row_of(p));

  for (auto [r, c] : cells) ++counts_[r * col_count() + c];
  for (std::size_t c : missed) ++no_value_[c];
  for (std::size_t r : spurious) ++spurious_[r];
  unmatched_total_ += spurious.size();
}

ConfusionMatrix accumulate(std::span<const AlignmentSet> alignments,
                           const Scaffold& scaffold, bool spurious_column) {
  ConfusionMatrix m(scaffold, spurious_column);
  for (const AlignmentSet& a : alignments) m.add(a);
  return m;
}

ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b) {
  if (a.scaffold_ != b.scaffold_ || a.spurious_column_ != b.spurious_column_)
    throw ScaffoldMismatchError("cannot merge matrices with different "
                                "row/column scaffolding");
  ConfusionMatrix out = a;
  for (std::size_t i = 0; i < out.counts_.size(); ++i)
    out.counts_[i] += b.counts_[i];
  for (std::size_t i = 0; i < out.no_value_.size(); ++i)
    out.no_value_[i] += b.no_value_[i];
  for (std::size_t i = 0; i < out.spurious_.size(); ++i)
    out.spurious_[i] += b.spurious_[i];
  out.unmatched_total_ += b.unmatched_total_;
  return out;
}

std::string render(const ConfusionMatrix& m, MatrixFormat format) {
  const auto& sc = m.scaffold();
  if (format == MatrixFormat::Json) {
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json counts = nlohmann::json::array();
    for (std::size_t r = 0; r < m.row_count(); ++r) {
      rows.push_back(sc.rows[r].str());
      nlohmann::json line = nlohmann::json::array();
      for (std::size_t c = 0; c < m.col_count(); ++c) line.push_back(m.at(r, c));
      counts.push_back(std::move(line));
    }
    rows.push_back(kNoValueRow);
    nlohmann::json last = nlohmann::json::array();
    for (std::size_t c = 0; c < m.col_count(); ++c) last.push_back(m.no_value(c));
    counts.push_back(std::move(last));

    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : sc.cols) cols.push_back(c.str());

    nlohmann::json doc = {{"rows", rows},
                          {"cols", cols},
                          {"counts", counts},
                          {"unmatched_predicted", m.unmatched_predicted_total()}};
    if (m.has_spurious_column()) {
      nlohmann::json sp = nlohmann::json::array();
      for (std::size_t r = 0; r < m.row_count(); ++r) sp.push_back(m.spurious(r));
      sp.push_back(0);
      doc["spurious"] = std::move(sp);
    }
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "\"\"";
  for (const auto& c : sc.cols) out << ',' << csv_field(c.str());
  if (m.has_spurious_column()) out << ',' << kSpuriousColumn;
  out << '\n';
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    out << csv_field(sc.rows[r].str());
    for (std::size_t c = 0; c < m.col_count(); ++c) out << ',' << m.at(r, c);
    if (m.has_spurious_column()) out << ',' << m.spurious(r);
    out << '\n';
  }
  out << kNoValueRow;
  for (std::size_t c = 0; c < m.col_count(); ++c) out << ',' << m.no_value(c);
  if (m.has_spurious_column()) out << ",0";
  out << '\n';
  return out.str();
}

std::optional<double> ClassCounts::precision() const { return ratio(tp, tp + fp); }
std::optional<double> ClassCounts::recall() const { return ratio(tp, tp + fn); }
std::optional<double> ClassCounts::f1() const {
  return ratio(2 * tp, 2 * tp + fp + fn);
}

ClassMetrics class_metrics(std::span<const ItemLabels> items,
                           const LabelSet& vocabulary) {
  if (items.empty()) throw EmptyDatasetError("no items to evaluate");
  if (vocabulary.empty()) throw EmptyDatasetError("empty class vocabulary");

  LabelSet vocab = vocabulary;
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  ClassMetrics out;
  for (const ConceptId& c : vocab) out.per_class[c];

  std::uint64_t mismatches = 0;
  for (const ItemLabels& item : items) {
    for (const LabelSet* s : {&item.expected, &item.predicted})
      for (const ConceptId& label : *s)
        if (!std::binary_search(vocab.begin(), vocab.end(), label))
          throw VocabularyMismatchError("item '" + item.id + "': label '" +
                                        label.str() +
                                        "' is not in the vocabulary");
    for (const ConceptId& e : item.expected) {
      auto& cc = out.per_class[e];
      if (std::binary_search(item.predicted.begin(), item.predicted.end(), e))
        ++cc.tp;
      else
        ++cc.fn, ++mismatches;
    }
    for (const ConceptId& p : item.predicted)
      if (!std::binary_search(item.expected.begin(), item.expected.end(), p))
        ++out.per_class[p].fp, ++mismatches;
  }

  const std::uint64_t n = items.size();
  std::uint64_t correct = 0;
  for (auto& [label, cc] : out.per_class) {
    cc.tn = n - cc.tp - cc.fp - cc.fn;
    correct += cc.tp + cc.tn;
  }
  const double cells = static_cast<double>(vocab.size()) * static_cast<double>(n);
  out.hamming_loss = static_cast<double>(mismatches) / cells;
  out.micro_accuracy = static_cast<double>(correct) / cells;
  return out;
}

std::string render_metrics(const ClassMetrics& metrics) {
  auto value = [](std::optional<double> v) -> nlohmann::json {
    if (!v) return "undef";
    return *v;
  };
  nlohmann::json per_class = nlohmann::json::object();
  for (const auto& [label, cc] : metrics.per_class)
    per_class[label.str()] = {{"tp", cc.tp},
                              {"fp", cc.fp},
                              {"fn", cc.fn},
                              {"tn", cc.tn},
                              {"precision", value(cc.precision())},
                              {"recall", value(cc.recall())},
                              {"f1", value(cc.f1())}};
  nlohmann::json doc = {{"per_class", per_class},
                        {"hamming_loss", metrics.hamming_loss},
                        {"micro_accuracy", metrics.micro_accuracy}};
  return doc.dump(2) + "\n";
}

}  // namespace semalign
