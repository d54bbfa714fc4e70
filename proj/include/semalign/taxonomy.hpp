#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalign/concept_id.hpp"

namespace semalign {

/// One node of the is-a taxonomy. Lemmas, parents and feature terms are kept
/// sorted and duplicate-free.
struct Concept {
  ConceptId id;
  std::vector<std::string> lemmas;
  std::optional<std::string> gloss;
  LabelSet parents;
  /// Parts, functions and attributes merged into one set.
  std::vector<std::string> features;
};

/// Immutable single-rooted is-a DAG.
///
/// Concepts are stored in ConceptId order and addressed internally by their
/// position in that order, so "smallest index" and "lexicographically
/// smallest id" coincide. Depth, hypernym closure and the radius-1
/// neighborhood of every concept are computed once at construction; all
/// queries are const and safe to call concurrently.
class Taxonomy {
 public:
  using Index = std::uint32_t;

  /// Validates and indexes `concepts`. Throws DuplicateIdError,
  /// UnknownConceptError (dangling parent), CycleError, UnreachableRootError
  /// or ParseError.
  static Taxonomy build(ConceptId root, std::vector<Concept> concepts);

  std::size_t size() const noexcept { return concepts_.size(); }
  const ConceptId& root() const noexcept { return concepts_[root_].id; }
  bool contains(const ConceptId& id) const noexcept;

  const Concept& find_concept(const ConceptId& id) const;
  std::span<const Concept> concepts() const noexcept { return concepts_; }

  /// Node count of the longest root-to-`c` chain; depth(root) == 1.
  int depth(const ConceptId& c) const;
  /// All strict ancestors of `c`, sorted.
  LabelSet hypernym_closure(const ConceptId& c) const;
  /// Deepest common ancestor-or-self; depth ties go to the smallest id.
  ConceptId lcs(const ConceptId& a, const ConceptId& b) const;
  /// `c` plus every concept within `radius` undirected is-a steps, sorted.
  LabelSet neighborhood(const ConceptId& c, int radius) const;
  int max_depth() const noexcept;

  // Index-level access used by the similarity kernels.
  Index index_of(const ConceptId& id) const;
  const Concept& at(Index i) const { return concepts_[i]; }
  int depth_at(Index i) const { return depth_[i]; }
  std::span<const Index> ancestors_at(Index i) const { return ancestors_[i]; }
  std::span<const Index> neighborhood1_at(Index i) const {
    return neighbors1_[i];
  }
  std::span<const Index> children_at(Index i) const { return children_[i]; }
  std::span<const Index> parents_at(Index i) const { return parents_[i]; }
  Index lcs_at(Index a, Index b) const;
  std::vector<Index> neighborhood_at(Index c, int radius) const;

 private:
  Taxonomy() = default;

  std::vector<Concept> concepts_;
  Index root_ = 0;
  std::vector<std::vector<Index>> parents_;
  std::vector<std::vector<Index>> children_;
  std::vector<int> depth_;
  std::vector<std::vector<Index>> ancestors_;
  std::vector<std::vector<Index>> neighbors1_;
};

/// Parses the JSON taxonomy document
/// `{"root": id, "concepts": [{"id","lemmas","gloss","parents","features"}]}`.
Taxonomy load_taxonomy(std::istream& source);

struct TaxonomyWarning {
  ConceptId label;
  std::string kind;  // "empty_features" or "missing_gloss"
  std::string message;
};

struct ValidationReport {
  std::size_t concept_count = 0;
  int max_depth = 0;
  std::size_t structural_errors = 0;
  /// Sorted by concept id, then kind.
  std::vector<TaxonomyWarning> warnings;
};

ValidationReport validate(const Taxonomy& t);

}  // namespace semalign
