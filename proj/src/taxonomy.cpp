#include "semalign/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "semalign/errors.hpp"

namespace semalign {

namespace {

using Index = Taxonomy::Index;
using nlohmann::json;

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Index> merge_sorted(const std::vector<Index>& a,
                                std::span<const Index> b) {
  std::vector<Index> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// Returns one cycle as a list of indices (first == last), or empty.
std::vector<Index> find_cycle(const std::vector<std::vector<Index>>& parents) {
  enum class Mark : unsigned char { White, Grey, Black };
  const auto n = static_cast<Index>(parents.size());
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::pair<Index, std::size_t>> stack;

  for (Index start = 0; start < n; ++start) {
    if (mark[start] != Mark::White) continue;
    stack.emplace_back(start, 0);
    mark[start] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == parents[node].size()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const Index p = parents[node][next++];
      if (mark[p] == Mark::Grey) {
        std::vector<Index> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [p](const auto& f) { return f.first == p; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        cycle.push_back(p);
        return cycle;
      }
      if (mark[p] == Mark::White) {
        mark[p] = Mark::Grey;
        stack.emplace_back(p, 0);
      }
    }
  }
  return {};
}

std::vector<std::string> string_set(const json& node, const char* field,
                                    const std::string& owner) {
  std::vector<std::string> out;
  if (!node.contains(field) || node.at(field).is_null()) return out;
  const json& arr = node.at(field);
  if (!arr.is_array())
    throw ParseError("concept '" + owner + "': field '" + field +
                     "' must be an array of strings");
  for (const json& v : arr) {
    if (!v.is_string())
      throw ParseError("concept '" + owner + "': field '" + field +
                       "' must contain only strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Taxonomy Taxonomy::build(ConceptId root, std::vector<Concept> concepts) {
  Taxonomy t;
  std::sort(concepts.begin(), concepts.end(),
            [](const Concept& a, const Concept& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < concepts.size(); ++i)
    if (concepts[i].id == concepts[i - 1].id)
      throw DuplicateIdError("duplicate concept id '" + concepts[i].id.str() +
                             "'");

  for (Concept& c : concepts) {
    sort_unique(c.lemmas);
    sort_unique(c.parents);
    sort_unique(c.features);
    if (c.lemmas.empty())
      throw ParseError("concept '" + c.id.str() + "' has no lemmas");
  }
  t.concepts_ = std::move(concepts);
  const auto n = t.concepts_.size();

  auto find = [&t](const ConceptId& id) -> std::optional<Index> {
    auto it = std::lower_bound(
        t.concepts_.begin(), t.concepts_.end(), id,
        [](const Concept& c, const ConceptId& key) { return c.id < key; });
    if (it == t.concepts_.end() || it->id != id) return std::nullopt;
    return static_cast<Index>(it - t.concepts_.begin());
  };

  const auto root_idx = find(root);
  if (!root_idx)
    throw UnknownConceptError("root '" + root.str() +
                              "' is not defined as a concept");
  t.root_ = *root_idx;
  if (!t.concepts_[t.root_].parents.empty())
    throw ParseError("root '" + root.str() + "' must not have parents");

  t.parents_.resize(n);
  t.children_.resize(n);
  for (Index i = 0; i < n; ++i) {
    for (const ConceptId& p : t.concepts_[i].parents) {
      const auto pi = find(p);
      if (!pi)
        throw UnknownConceptError("concept '" + t.concepts_[i].id.str() +
                                  "' lists unknown parent '" + p.str() + "'");
      t.parents_[i].push_back(*pi);
      t.children_[*pi].push_back(i);
    }
  }
  for (auto& c : t.children_) std::sort(c.begin(), c.end());

  if (const auto cycle = find_cycle(t.parents_); !cycle.empty()) {
    std::string msg = "is-a cycle: ";
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) msg += " -> ";
      msg += t.concepts_[cycle[k]].id.str();
    }
    throw CycleError(msg);
  }

  // Kahn's order from the root: every parent is finalized before its child.
  std::vector<std::size_t> pending(n);
  for (Index i = 0; i < n; ++i) pending[i] = t.parents_[i].size();
  std::vector<Index> order;
  order.reserve(n);
  std::deque<Index> ready{t.root_};
  while (!ready.empty()) {
    const Index u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (Index c : t.children_[u])
      if (--pending[c] == 0) ready.push_back(c);
  }
  if (order.size() != n) {
    std::vector<bool> seen(n, false);
    for (Index u : order) seen[u] = true;
    std::string msg = "concepts not reachable from root '" + root.str() + "':";
    for (Index i = 0; i < n; ++i)
      if (!seen[i]) msg += " '" + t.concepts_[i].id.str() + "'";
    throw UnreachableRootError(msg);
  }

  t.depth_.assign(n, 1);
  t.ancestors_.assign(n, {});
  for (Index u : order) {
    for (Index p : t.parents_[u]) {
      t.depth_[u] = std::max(t.depth_[u], t.depth_[p] + 1);
      std::vector<Index> with_parent = merge_sorted(t.ancestors_[p], {&p, 1});
      t.ancestors_[u] = merge_sorted(t.ancestors_[u], with_parent);
    }
  }

  t.neighbors1_.resize(n);
  for (Index i = 0; i < n; ++i) {
    auto& nb = t.neighbors1_[i];
    nb = merge_sorted(t.parents_[i], t.children_[i]);
    nb = merge_sorted(nb, {&i, 1});
  }
  return t;
}

bool Taxonomy::contains(const ConceptId& id) const noexcept {
  auto it = std::lower_bound(
      concepts_.begin(), concepts_.end(), id,
      [](const Concept& c, const ConceptId& key) { return c.id < key; });
  return it != concepts_.end() && it->id == id;
}

Taxonomy::Index Taxonomy::index_of(const ConceptId& id) const {
  auto it = std::lower_bound(
      concepts_.begin(), concepts_.end(), id,
      [](const Concept& c, const ConceptId& key) { return c.id < key; });
  if (it == concepts_.end() || it->id != id)
    throw UnknownConceptError("unknown concept '" + id.str() + "'");
  return static_cast<Index>(it - concepts_.begin());
}

const Concept& Taxonomy::find_concept(const ConceptId& id) const {
  return concepts_[index_of(id)];
}

int Taxonomy::depth(const ConceptId& c) const { return depth_[index_of(c)]; }

int Taxonomy::max_depth() const noexcept {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

LabelSet Taxonomy::hypernym_closure(const ConceptId& c) const {
  LabelSet out;
  for (Index a : ancestors_[index_of(c)]) out.push_back(concepts_[a].id);
  return out;
}

Taxonomy::Index Taxonomy::lcs_at(Index a, Index b) const {
  const std::vector<Index> self_a = merge_sorted(ancestors_[a], {&a, 1});
  const std::vector<Index> self_b = merge_sorted(ancestors_[b], {&b, 1});
  std::vector<Index> common;
  std::set_intersection(self_a.begin(), self_a.end(), self_b.begin(),
                        self_b.end(), std::back_inserter(common));
  // `common` is ascending, so the first maximum is the smallest id.
  Index best = common.front();
  for (Index c : common)
    if (depth_[c] > depth_[best]) best = c;
  return best;
}

ConceptId Taxonomy::lcs(const ConceptId& a, const ConceptId& b) const {
  return concepts_[lcs_at(index_of(a), index_of(b))].id;
}

std::vector<Taxonomy::Index> Taxonomy::neighborhood_at(Index c,
                                                       int radius) const {
  if (radius < 1) throw ConfigError("neighborhood radius must be >= 1");
  std::vector<int> dist(concepts_.size(), -1);
  std::deque<Index> frontier{c};
  dist[c] = 0;
  std::vector<Index> out{c};
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop_front();
    if (dist[u] == radius) continue;
    for (auto edges : {std::span<const Index>(parents_[u]),
                       std::span<const Index>(children_[u])}) {
      for (Index v : edges) {
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        out.push_back(v);
        frontier.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LabelSet Taxonomy::neighborhood(const ConceptId& c, int radius) const {
  LabelSet out;
  for (Index i : neighborhood_at(index_of(c), radius))
    out.push_back(concepts_[i].id);
  return out;
}

Taxonomy load_taxonomy(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::exception& e) {
    throw ParseError(std::string("taxonomy document is not valid JSON: ") +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("root") || !doc["root"].is_string() ||
      !doc.contains("concepts") || !doc["concepts"].is_array())
    throw ParseError(
        "taxonomy document needs a string 'root' and an array 'concepts'");

  std::vector<Concept> concepts;
  concepts.reserve(doc["concepts"].size());
  for (const json& node : doc["concepts"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_string())
      throw ParseError("every concept needs a string 'id'");
    Concept c;
    c.id = ConceptId(node["id"].get<std::string>());
    if (!node.contains("lemmas"))
      throw ParseError("concept '" + c.id.str() + "' has no 'lemmas' field");
    c.lemmas = string_set(node, "lemmas", c.id.str());
    for (auto& p : string_set(node, "parents", c.id.str()))
      c.parents.emplace_back(std::move(p));
    c.features = string_set(node, "features", c.id.str());
    if (node.contains("gloss") && !node["gloss"].is_null()) {
      if (!node["gloss"].is_string())
        throw ParseError("concept '" + c.id.str() + "': gloss must be a string");
      c.gloss = node["gloss"].get<std::string>();
    }
    concepts.push_back(std::move(c));
  }
  return Taxonomy::build(ConceptId(doc["root"].get<std::string>()),
                         std::move(concepts));
}

ValidationReport validate(const Taxonomy& t) {
  ValidationReport report;
  report.concept_count = t.size();
  report.max_depth = t.max_depth();
  for (const Concept& c : t.concepts()) {
    if (c.features.empty())
      report.warnings.push_back(
          {c.id, "empty_features",
           "no feature terms; feature similarity relies on lemmas and "
           "neighborhood only"});
    if (!c.gloss || c.gloss->empty())
      report.warnings.push_back({c.id, "missing_gloss", "no gloss"});
  }
  // concepts() is already id-ordered and kinds are pushed in a fixed order.
  return report;
}

}  // namespace semalign
