#include "semalign/alignment.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "semalign/errors.hpp"

namespace semalign {

ScanSide scan_side(std::size_t n_predicted, std::size_t n_expected) {
  return n_predicted > n_expected ? ScanSide::Expected : ScanSide::Predicted;
}

namespace {

// View of the matrix from the scan side: scan label i, partner j.
struct Oriented {
  const SimilarityMatrix& m;
  bool scan_rows;

  std::size_t scan_count() const {
    return scan_rows ? m.row_count() : m.col_count();
  }
  std::size_t partner_count() const {
    return scan_rows ? m.col_count() : m.row_count();
  }
  const ConceptId& scan(std::size_t i) const {
    return scan_rows ? m.rows()[i] : m.cols()[i];
  }
  const ConceptId& partner(std::size_t j) const {
    return scan_rows ? m.cols()[j] : m.rows()[j];
  }
  double sim(std::size_t i, std::size_t j) const {
    return scan_rows ? m.at(i, j) : m.at(j, i);
  }
};

// Partner indices with similarity >= threshold, best first.
std::vector<std::size_t> preferences(const Oriented& v, std::size_t i,
                                     double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < v.partner_count(); ++j)
    if (v.sim(i, j) >= threshold) out.push_back(j);
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    // Matrix labels are sorted, so index order is id order.
    return v.sim(i, a) > v.sim(i, b);
  });
  return out;
}

}  // namespace

std::optional<Partner> best_partner(const ConceptId& s,
                                    const SimilarityMatrix& m, ScanSide side,
                                    const LabelSet& excluded,
                                    double threshold) {
  const Oriented v{m, side == ScanSide::Expected};
  const auto i = v.scan_rows ? m.row_of(s) : m.col_of(s);
  if (!i)
    throw LabelNotInMatrixError(
        "label '" + s.str() + "' is not a " +
        (v.scan_rows ? "row" : "column") + " of the matrix for item '" +
        m.item_id() + "'");

  std::optional<Partner> best;
  for (std::size_t j : preferences(v, *i, threshold)) {
    if (std::find(excluded.begin(), excluded.end(), v.partner(j)) !=
        excluded.end())
      continue;
    best = Partner{v.partner(j), v.sim(*i, j)};
    break;
  }
  return best;
}

AlignmentSet align_item(const SimilarityMatrix& m, double threshold) {
  const ScanSide side = scan_side(m.col_count(), m.row_count());
  const Oriented v{m, side == ScanSide::Expected};
  const std::size_t n_scan = v.scan_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::vector<std::size_t>> prefs(n_scan);
  for (std::size_t i = 0; i < n_scan; ++i) prefs[i] = preferences(v, i, threshold);
  std::vector<std::size_t> next(n_scan, 0);
  std::vector<std::size_t> holder(v.partner_count(), kNone);

  // Smallest scan index first == lexicographic id order.
  std::set<std::size_t> free_queue;
  for (std::size_t i = 0; i < n_scan; ++i) free_queue.insert(i);

  while (!free_queue.empty()) {
    const std::size_t i = *free_queue.begin();
    if (next[i] == prefs[i].size()) {
      free_queue.erase(free_queue.begin());  // exhausted: stays unmatched
      continue;
    }
    const std::size_t j = prefs[i][next[i]++];
    const std::size_t incumbent = holder[j];
    if (incumbent == kNone) {
      holder[j] = i;
      free_queue.erase(free_queue.begin());
      continue;
    }
    const double challenger = v.sim(i, j);
    const double held = v.sim(incumbent, j);
    const bool displaces =
        challenger > held || (challenger == held && i < incumbent);
    if (displaces) {
      holder[j] = i;
      free_queue.erase(free_queue.begin());
      free_queue.insert(incumbent);
    }
  }

  AlignmentSet out;
  out.item_id = m.item_id();
  std::vector<bool> scan_matched(n_scan, false);
  for (std::size_t j = 0; j < holder.size(); ++j) {
    const std::size_t i = holder[j];
    if (i == kNone) {
      (v.scan_rows ? out.unmatched_predicted : out.unmatched_expected)
          .push_back(v.partner(j));
      continue;
    }
    scan_matched[i] = true;
    if (v.scan_rows)
      out.pairs.push_back({v.scan(i), v.partner(j), v.sim(i, j)});
    else
      out.pairs.push_back({v.partner(j), v.scan(i), v.sim(i, j)});
  }
  for (std::size_t i = 0; i < n_scan; ++i)
    if (!scan_matched[i])
      (v.scan_rows ? out.unmatched_expected : out.unmatched_predicted)
          .push_back(v.scan(i));

  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const AlignmentPair& a, const AlignmentPair& b) {
              return std::tie(a.expected, a.predicted) <
                     std::tie(b.expected, b.predicted);
            });
  std::sort(out.unmatched_expected.begin(), out.unmatched_expected.end());
  std::sort(out.unmatched_predicted.begin(), out.unmatched_predicted.end());
  return out;
}

}  // namespace semalign
