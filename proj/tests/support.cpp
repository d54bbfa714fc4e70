#include "support.hpp"

#include "semalign/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace semalign::test {

LabelSet ids(std::initializer_list<const char*> names) {
  LabelSet out;
  for (const char* n : names) out.emplace_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

std::string fixture(const std::string& name) {
  return std::string(SEMALIGN_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<ItemLabels> fixture_items() {
  std::ifstream in(fixture("items.json"));
  return load_items(in);
}

std::vector<SimilarityMatrix> fixture_matrices() {
  std::ifstream in(fixture("matrices.json"));
  return load_precomputed(in, fixture_items());
}

RawTaxonomy random_taxonomy(std::mt19937_64& rng, int n, bool allow_empty) {
  const std::vector<std::string> lemma_pool = {"l0", "l1", "l2", "l3", "l4"};
  const std::vector<std::string> feature_pool = {"f0", "f1", "f2",
                                                 "f3", "f4", "f5"};
  auto subset = [&rng](const std::vector<std::string>& pool, bool nonempty) {
    std::vector<std::string> out;
    std::bernoulli_distribution coin(0.4);
    for (const auto& x : pool)
      if (coin(rng)) out.push_back(x);
    if (nonempty && out.empty())
      out.push_back(pool[std::uniform_int_distribution<std::size_t>(
          0, pool.size() - 1)(rng)]);
    return out;
  };

  RawTaxonomy t;
  t.root = "c0";
  for (int i = 0; i < n; ++i) {
    Concept c;
    c.id = ConceptId("c" + std::to_string(i));
    c.lemmas = subset(lemma_pool, true);
    c.features = subset(feature_pool, !allow_empty);
    if (i > 0) {
      std::uniform_int_distribution<int> pick(0, i - 1);
      const int first = pick(rng);
      c.parents.emplace_back("c" + std::to_string(first));
      if (i > 1 && std::bernoulli_distribution(0.4)(rng)) {
        const int second = pick(rng);
        if (second != first) c.parents.emplace_back("c" + std::to_string(second));
      }
    }
    t.concepts.push_back(std::move(c));
  }
  std::shuffle(t.concepts.begin(), t.concepts.end(), rng);
  return t;
}

Taxonomy build(const RawTaxonomy& raw) {
  return Taxonomy::build(ConceptId(raw.root), raw.concepts);
}

namespace oracle {

namespace {

const Concept& find(const RawTaxonomy& t, const std::string& c) {
  for (const Concept& x : t.concepts)
    if (x.id.str() == c) return x;
  throw std::runtime_error("oracle: no concept " + c);
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

double tversky(const std::set<std::string>& a, const std::set<std::string>& b,
               double alpha) {
  std::set<std::string> universe = a;
  universe.insert(b.begin(), b.end());
  if (universe.empty()) return 0.0;
  double both = 0, only_a = 0, only_b = 0;
  for (const auto& x : universe) {
    const bool in_a = a.count(x) > 0, in_b = b.count(x) > 0;
    if (in_a && in_b)
      both += 1;
    else if (in_a)
      only_a += 1;
    else
      only_b += 1;
  }
  if (both == 0) return 0.0;
  return both / (both + alpha * only_a + (1 - alpha) * only_b);
}

int depth(const RawTaxonomy& t, const std::string& c) {
  int best = 1;
  for (const ConceptId& p : find(t, c).parents)
    best = std::max(best, 1 + depth(t, p.str()));
  return best;
}

std::set<std::string> ancestors(const RawTaxonomy& t, const std::string& c) {
  std::set<std::string> out;
  for (const ConceptId& p : find(t, c).parents) {
    out.insert(p.str());
    auto up = ancestors(t, p.str());
    out.insert(up.begin(), up.end());
  }
  return out;
}

std::set<std::string> neighborhood1(const RawTaxonomy& t, const std::string& c) {
  std::set<std::string> out{c};
  for (const ConceptId& p : find(t, c).parents) out.insert(p.str());
  for (const Concept& x : t.concepts)
    for (const ConceptId& p : x.parents)
      if (p.str() == c) out.insert(x.id.str());
  return out;
}

std::string lcs(const RawTaxonomy& t, const std::string& a,
                const std::string& b) {
  auto sa = ancestors(t, a);
  sa.insert(a);
  auto sb = ancestors(t, b);
  sb.insert(b);
  std::string best;
  int best_depth = 0;
  for (const auto& x : sa) {
    if (!sb.count(x)) continue;
    const int d = depth(t, x);
    if (d > best_depth || (d == best_depth && x < best)) {
      best = x;
      best_depth = d;
    }
  }
  return best;
}

double feature_similarity(const RawTaxonomy& t, const std::string& a,
                          const std::string& b) {
  const double da = depth(t, a), db = depth(t, b);
  const double alpha = std::min(da, db) / (da + db);
  const Concept& ca = find(t, a);
  const Concept& cb = find(t, b);
  return tversky(as_set(ca.lemmas), as_set(cb.lemmas), alpha) +
         tversky(as_set(ca.features), as_set(cb.features), alpha) +
         tversky(neighborhood1(t, a), neighborhood1(t, b), alpha);
}

double path_similarity(const RawTaxonomy& t, const std::string& a,
                       const std::string& b) {
  return 2.0 * depth(t, lcs(t, a, b)) / (depth(t, a) + depth(t, b));
}

namespace {

struct View {
  const Grid& g;
  bool expected_scans;

  std::vector<std::string> scans() const {
    auto v = expected_scans ? g.rows : g.cols;
    std::sort(v.begin(), v.end());
    return v;
  }
  std::vector<std::string> partners() const {
    auto v = expected_scans ? g.cols : g.rows;
    std::sort(v.begin(), v.end());
    return v;
  }
  double sim(const std::string& s, const std::string& p) const {
    return expected_scans ? g.cell.at({s, p}) : g.cell.at({p, s});
  }
  // Scan label s prefers p1 to p2.
  bool scan_prefers(const std::string& s, const std::string& p1,
                    const std::string& p2) const {
    const double a = sim(s, p1), b = sim(s, p2);
    return a > b || (a == b && p1 < p2);
  }
  // Partner p prefers s1 to s2.
  bool partner_prefers(const std::string& p, const std::string& s1,
                       const std::string& s2) const {
    const double a = sim(s1, p), b = sim(s2, p);
    return a > b || (a == b && s1 < s2);
  }
  std::pair<std::string, std::string> pair(const std::string& s,
                                           const std::string& p) const {
    return expected_scans ? std::make_pair(s, p) : std::make_pair(p, s);
  }
};

View view_of(const Grid& g) { return View{g, g.cols.size() > g.rows.size()}; }

}  // namespace

Matching cascade(const Grid& g, double threshold) {
  const View v = view_of(g);
  std::map<std::string, std::string> holder;    // partner -> scan
  std::map<std::string, std::string> assigned;  // scan -> partner
  std::map<std::string, std::set<std::string>> lost;
  std::set<std::string> exhausted;

  while (true) {
    std::map<std::string, std::vector<std::string>> claims;
    for (const auto& s : v.scans()) {
      if (assigned.count(s) || exhausted.count(s)) continue;
      std::optional<std::string> best;
      for (const auto& p : v.partners()) {
        if (lost[s].count(p) || v.sim(s, p) < threshold) continue;
        if (!best || v.scan_prefers(s, p, *best)) best = p;
      }
      if (best)
        claims[*best].push_back(s);
      else
        exhausted.insert(s);
    }
    if (claims.empty()) break;
    for (auto& [p, claimants] : claims) {
      if (auto h = holder.find(p); h != holder.end())
        claimants.push_back(h->second);
      std::string winner = claimants.front();
      for (const auto& s : claimants)
        if (v.partner_prefers(p, s, winner)) winner = s;
      for (const auto& s : claimants) {
        if (s == winner) continue;
        lost[s].insert(p);
        assigned.erase(s);
      }
      holder[p] = winner;
      assigned[winner] = p;
    }
  }

  Matching out;
  for (const auto& [s, p] : assigned) out.insert(v.pair(s, p));
  return out;
}

bool is_stable(const Grid& g, double threshold, const Matching& m) {
  const View v = view_of(g);
  std::map<std::string, std::string> of_scan, of_partner;
  for (const auto& [e, p] : m) {
    const auto& s = v.expected_scans ? e : p;
    const auto& q = v.expected_scans ? p : e;
    if (v.sim(s, q) < threshold) return false;
    of_scan[s] = q;
    of_partner[q] = s;
  }
  for (const auto& s : v.scans())
    for (const auto& p : v.partners()) {
      if (v.sim(s, p) < threshold) continue;
      auto cs = of_scan.find(s);
      if (cs != of_scan.end() && cs->second == p) continue;
      const bool s_wants =
          cs == of_scan.end() || v.scan_prefers(s, p, cs->second);
      auto cp = of_partner.find(p);
      const bool p_wants =
          cp == of_partner.end() || v.partner_prefers(p, s, cp->second);
      if (s_wants && p_wants) return false;
    }
  return true;
}

std::vector<Matching> all_stable(const Grid& g, double threshold) {
  const View v = view_of(g);
  const auto scans = v.scans();
  const auto partners = v.partners();
  std::vector<Matching> out;
  Matching current;
  std::set<std::string> used;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == scans.size()) {
      if (is_stable(g, threshold, current)) out.push_back(current);
      return;
    }
    rec(k + 1);
    for (const auto& p : partners) {
      if (used.count(p) || v.sim(scans[k], p) < threshold) continue;
      used.insert(p);
      current.insert(v.pair(scans[k], p));
      rec(k + 1);
      current.erase(v.pair(scans[k], p));
      used.erase(p);
    }
  };
  rec(0);
  return out;
}

}  // namespace oracle

oracle::Grid random_grid(std::mt19937_64& rng, int max_dim) {
  std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<int> dim(0, max_dim);
  std::uniform_int_distribution<int> step(0, 6);
  oracle::Grid g;
  std::shuffle(pool.begin(), pool.end(), rng);
  g.rows.assign(pool.begin(), pool.begin() + dim(rng));
  std::shuffle(pool.begin(), pool.end(), rng);
  g.cols.assign(pool.begin(), pool.begin() + dim(rng));
  for (const auto& r : g.rows)
    for (const auto& c : g.cols) g.cell[{r, c}] = 0.5 * step(rng);
  return g;
}

SimilarityMatrix to_matrix(const oracle::Grid& g,
                           const MeasureDescriptor& measure,
                           const std::string& item) {
  std::vector<ConceptId> rows, cols;
  std::vector<double> cells;
  for (const auto& r : g.rows) rows.emplace_back(r);
  for (const auto& c : g.cols) cols.emplace_back(c);
  for (const auto& r : g.rows)
    for (const auto& c : g.cols) cells.push_back(g.cell.at({r, c}));
  return SimilarityMatrix(item, measure, rows, cols, cells);
}

oracle::Matching matching_of(const AlignmentSet& a) {
  oracle::Matching out;
  for (const auto& p : a.pairs) out.insert({p.expected.str(), p.predicted.str()});
  return out;
}

}  // namespace semalign::test
