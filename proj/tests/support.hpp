#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semalign/alignment.hpp"
#include "semalign/semsim.hpp"
#include "semalign/taxonomy.hpp"

// Test-only helpers and oracles. Nothing here calls into the library code
// paths it is used to check; oracles work on plain strings and std::set.

namespace semalign::test {

inline ConceptId id(const char* s) { return ConceptId(s); }
LabelSet ids(std::initializer_list<const char*> names);

std::string fixture(const std::string& name);
std::string read_file(const std::string& path);

/// Shipped fixture items and their precomputed matrices.
std::vector<ItemLabels> fixture_items();
std::vector<SimilarityMatrix> fixture_matrices();

/// Raw taxonomy description that both the library and the oracles consume.
struct RawTaxonomy {
  std::string root;
  std::vector<Concept> concepts;
};

/// Random single-rooted DAG with `n` concepts named "c0".."c{n-1}"; each
/// non-root concept gets 1-2 parents among earlier ones. Lemma and feature
/// sets are drawn from small shared pools (possibly empty when
/// `allow_empty`).
RawTaxonomy random_taxonomy(std::mt19937_64& rng, int n, bool allow_empty);
Taxonomy build(const RawTaxonomy& raw);

namespace oracle {

/// Tversky ratio by enumerating the union of both sets.
double tversky(const std::set<std::string>& a, const std::set<std::string>& b,
               double alpha);
/// Longest root-to-node path (in nodes) by enumerating every path.
int depth(const RawTaxonomy& t, const std::string& c);
std::set<std::string> ancestors(const RawTaxonomy& t, const std::string& c);
std::set<std::string> neighborhood1(const RawTaxonomy& t, const std::string& c);
std::string lcs(const RawTaxonomy& t, const std::string& a,
                const std::string& b);
double feature_similarity(const RawTaxonomy& t, const std::string& a,
                          const std::string& b);
double path_similarity(const RawTaxonomy& t, const std::string& a,
                       const std::string& b);

/// Dense matrix keyed by label strings.
struct Grid {
  std::vector<std::string> rows;  // expected
  std::vector<std::string> cols;  // predicted
  std::map<std::pair<std::string, std::string>, double> cell;  // (e, p)
};

/// (expected, predicted) pairs.
using Matching = std::set<std::pair<std::string, std::string>>;

/// Literal round-based cascade: every unmatched label of the scan side
/// takes its argmax among partners it has not lost yet; every
/// contested partner keeps its highest claimant, losers retry.
Matching cascade(const Grid& g, double threshold);

/// True if no acceptable (scan, partner) pair would both prefer each other
/// over their current assignment.
bool is_stable(const Grid& g, double threshold, const Matching& m);
/// All stable matchings, by enumeration of partial matchings.
std::vector<Matching> all_stable(const Grid& g, double threshold);

}  // namespace oracle

/// Random grid: up to `max_dim` rows/cols with labels from a small pool,
/// cells from {0, 0.5, ..., 3}.
oracle::Grid random_grid(std::mt19937_64& rng, int max_dim);
SimilarityMatrix to_matrix(const oracle::Grid& g,
                           const MeasureDescriptor& measure,
                           const std::string& item = "x");
oracle::Matching matching_of(const AlignmentSet& a);

}  // namespace semalign::test
