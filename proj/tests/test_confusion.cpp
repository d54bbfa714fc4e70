#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "semalign/confusion.hpp"
#include "semalign/errors.hpp"
#include "support.hpp"

using namespace semalign;
using semalign::test::id;
using semalign::test::ids;

namespace {

std::vector<AlignmentSet> fixture_alignments() {
  std::vector<AlignmentSet> out;
  for (const auto& m : test::fixture_matrices())
    out.push_back(align_item(m, m.measure().threshold()));
  return out;
}

}  // namespace

TEST_CASE("scaffold") {
  const auto items = test::fixture_items();
  const Scaffold s = make_scaffold(items);
  CHECK(s.rows == ids({"Animal", "Belgian Shepherd", "Canid", "Dog",
                       "Domesticated animal", "German Shepherd", "Pet",
                       "Predatory animal", "Wolf", "Work animal"}));
  CHECK(s.cols == ids({"Animal", "Canid", "Dog", "Domesticated animal",
                       "German Shepherd", "Pet"}));

  auto wider = s.rows;
  wider.push_back(id("Cat"));
  CHECK(make_scaffold(items, wider).rows.size() == 11);
  CHECK_THROWS_AS(make_scaffold(items, ids({"Animal"})), VocabularyMismatchError);
}

TEST_CASE("accumulate the fixture alignments") {
  const auto items = test::fixture_items();
  const auto m = accumulate(fixture_alignments(), make_scaffold(items));
  CHECK(m.row_count() == 10);
  CHECK(m.col_count() == 6);

  std::map<std::pair<std::string, std::string>, std::uint64_t> nonzero = {
      {{"Animal", "Animal"}, 4},
      {{"Belgian Shepherd", "German Shepherd"}, 4},
      {{"Canid", "Canid"}, 3},
      {{"Dog", "Dog"}, 1},
      {{"Domesticated animal", "Domesticated animal"}, 2},
      {{"Pet", "Pet"}, 3},
      {{"Predatory animal", "Pet"}, 1},
      {{"Wolf", "Dog"}, 3},
      {{"Work animal", "Domesticated animal"}, 1},
      {{kNoValueRow, "Canid"}, 1},
      {{kNoValueRow, "Domesticated animal"}, 1},
  };
  auto rows = m.scaffold().rows;
  std::vector<std::string> row_names;
  for (const auto& r : rows) row_names.push_back(r.str());
  row_names.push_back(kNoValueRow);
  for (const auto& r : row_names)
    for (const auto& c : m.scaffold().cols) {
      auto it = nonzero.find({r, c.str()});
      CHECK_MESSAGE(m.count(r, c.str()) == (it == nonzero.end() ? 0 : it->second),
                    r << " / " << c.str());
    }
  CHECK(m.unmatched_predicted_total() == 0);
}

TEST_CASE("degenerate accumulations") {
  const Scaffold s{ids({"a", "b"}), ids({"a"})};
  const auto zero = accumulate({}, s);
  for (std::size_t r = 0; r < zero.row_count(); ++r) CHECK(zero.at(r, 0) == 0);
  CHECK(zero.no_value(0) == 0);
  CHECK(render(zero, MatrixFormat::Csv) == "\"\",a\na,0\nb,0\nNO_VALUE,0\n");

  AlignmentSet diag{"1", {{id("a"), id("a"), 3.0}}, {}, {}};
  const auto one = accumulate(std::vector{diag}, s);
  CHECK(one.count("a", "a") == 1);
  CHECK(one.count("b", "a") == 0);
  CHECK(one.count(kNoValueRow, "a") == 0);

  AlignmentSet stray{"2", {}, {}, {id("c")}};
  CHECK_THROWS_AS(accumulate(std::vector{stray}, s), VocabularyMismatchError);
  AlignmentSet bad_col{"3", {{id("b"), id("a"), 2.0}}, {}, {}};
  CHECK_THROWS_AS(accumulate(std::vector{bad_col}, s), VocabularyMismatchError);
}

TEST_CASE("merge") {
  const auto items = test::fixture_items();
  const Scaffold s = make_scaffold(items);
  const auto alignments = fixture_alignments();
  const auto table = accumulate(alignments, s);
  const ConfusionMatrix zero(s);

  CHECK(merge(table, zero) == table);
  const auto a = accumulate(std::span(alignments).first(2), s);
  const auto b = accumulate(std::span(alignments).last(2), s);
  CHECK(merge(a, b) == merge(b, a));
  CHECK(merge(a, b) == table);

  // every order of merging single-item matrices gives the same result
  std::vector<ConfusionMatrix> singles;
  for (const auto& al : alignments) singles.push_back(accumulate(std::vector{al}, s));
  std::vector<int> order(singles.size());
  std::iota(order.begin(), order.end(), 0);
  int permutations = 0;
  do {
    ConfusionMatrix acc(s);
    for (int k : order) acc = merge(acc, singles[static_cast<std::size_t>(k)]);
    CHECK(acc == table);
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(permutations == 24);

  const ConfusionMatrix other(Scaffold{ids({"a"}), ids({"a"})});
  CHECK_THROWS_AS(merge(table, other), ScaffoldMismatchError);
  CHECK_THROWS_AS(merge(table, ConfusionMatrix(s, true)), ScaffoldMismatchError);
}

TEST_CASE("render") {
  const auto items = test::fixture_items();
  const auto m = accumulate(fixture_alignments(), make_scaffold(items));
  const std::string csv = render(m, MatrixFormat::Csv);
  CHECK(csv == test::read_file(test::fixture("expected_matrix.csv")));
  CHECK(csv.find("\nWolf,0,0,3,0,0,0\n") != std::string::npos);
  CHECK(csv.back() == '\n');

  const auto doc = nlohmann::json::parse(render(m, MatrixFormat::Json));
  CHECK(doc["rows"].size() == 11);
  CHECK(doc["rows"].back() == kNoValueRow);
  CHECK(doc["cols"].size() == 6);
  CHECK(doc["counts"][8][2] == 3);  // Wolf / Dog
  CHECK(doc["unmatched_predicted"] == 0);
  CHECK_FALSE(doc.contains("spurious"));

  // labels that need quoting
  const Scaffold q{ids({"a,b", "say \"hi\""}), ids({"a,b"})};
  CHECK(render(ConfusionMatrix(q), MatrixFormat::Csv) ==
        "\"\",\"a,b\"\n\"a,b\",0\n\"say \"\"hi\"\"\",0\nNO_VALUE,0\n");
}

TEST_CASE("spurious column") {
  const Scaffold s{ids({"a", "x"}), ids({"a"})};
  AlignmentSet al{"1", {{id("a"), id("a"), 3.0}}, {}, ids({"x"})};
  const auto off = accumulate(std::vector{al}, s);
  CHECK(off.unmatched_predicted_total() == 1);
  CHECK(render(off, MatrixFormat::Csv) == "\"\",a\na,1\nx,0\nNO_VALUE,0\n");

  const auto on = accumulate(std::vector{al}, s, true);
  CHECK(render(on, MatrixFormat::Csv) ==
        "\"\",a,SPURIOUS\na,1,0\nx,0,1\nNO_VALUE,0,0\n");
  const auto doc = nlohmann::json::parse(render(on, MatrixFormat::Json));
  CHECK(doc["spurious"] == nlohmann::json::array({0, 1, 0}));
}

TEST_CASE("render is injective for a fixed scaffold") {
  const Scaffold s{ids({"a", "b"}), ids({"a", "b"})};
  std::set<std::string> seen;
  // All matrices built from up to two single-pair alignments.
  std::vector<AlignmentSet> choices = {
      {"1", {{id("a"), id("a"), 2.0}}, {}, {}},
      {"1", {{id("a"), id("b"), 2.0}}, {}, {}},
      {"1", {{id("b"), id("a"), 2.0}}, {}, {}},
      {"1", {}, ids({"a"}), {}},
      {"1", {}, ids({"b"}), {}},
  };
  for (std::size_t i = 0; i < choices.size(); ++i)
    for (std::size_t j = i; j < choices.size(); ++j) {
      const auto m = accumulate(std::vector{choices[i], choices[j]}, s);
      CHECK(seen.insert(render(m, MatrixFormat::Csv)).second);
    }
}

TEST_CASE("class metrics on the fixture") {
  const auto items = test::fixture_items();
  const auto vocab = make_scaffold(items).rows;
  REQUIRE(vocab.size() == 10);
  const auto metrics = class_metrics(items, vocab);

  const auto& animal = metrics.per_class.at(id("Animal"));
  CHECK(animal.tp == 4);
  CHECK(animal.fp == 0);
  CHECK(animal.fn == 0);
  CHECK(animal.tn == 0);
  CHECK(animal.precision() == 1.0);
  CHECK(animal.recall() == 1.0);

  const auto& dog = metrics.per_class.at(id("Dog"));
  CHECK(dog.tp == 1);
  CHECK(dog.fn == 3);
  CHECK(dog.fp == 0);
  CHECK(dog.recall() == 0.25);

  // Hamming loss from symmetric differences of the raw label sets.
  std::size_t diff = 0;
  for (const auto& item : items) {
    std::vector<ConceptId> d;
    std::set_symmetric_difference(item.expected.begin(), item.expected.end(),
                                  item.predicted.begin(), item.predicted.end(),
                                  std::back_inserter(d));
    diff += d.size();
  }
  CHECK(diff == 2 + 4 + 6 + 8);
  CHECK(metrics.hamming_loss == static_cast<double>(diff) / (10.0 * 4.0));
  CHECK(metrics.hamming_loss == 0.5);
  CHECK(metrics.micro_accuracy == 0.5);

  for (const auto& [label, cc] : metrics.per_class)
    CHECK(cc.tp + cc.fp + cc.fn + cc.tn == items.size());

  // Never predicted and never expected in items: precision/recall 0/0.
  const auto& belgian = metrics.per_class.at(id("Belgian Shepherd"));
  CHECK(belgian.fp == 4);
  CHECK_FALSE(belgian.recall());
  CHECK(belgian.precision() == 0.0);
  CHECK(belgian.f1() == 0.0);
}

TEST_CASE("class metrics edge cases") {
  std::vector<ItemLabels> perfect = {{"1", ids({"a", "b"}), ids({"a", "b"})},
                                     {"2", ids({"c"}), ids({"c"})}};
  const auto m = class_metrics(perfect, ids({"a", "b", "c", "d"}));
  CHECK(m.hamming_loss == 0.0);
  CHECK(m.micro_accuracy == 1.0);
  for (const char* c : {"a", "b", "c"}) {
    CHECK(m.per_class.at(id(c)).precision() == 1.0);
    CHECK(m.per_class.at(id(c)).recall() == 1.0);
  }
  CHECK_FALSE(m.per_class.at(id("d")).precision());
  CHECK_FALSE(m.per_class.at(id("d")).f1());

  const auto json = nlohmann::json::parse(render_metrics(m));
  CHECK(json["per_class"]["d"]["precision"] == "undef");
  CHECK(json["per_class"]["a"]["precision"] == 1.0);
  CHECK(json["hamming_loss"] == 0.0);

  CHECK_THROWS_AS(class_metrics({}, ids({"a"})), EmptyDatasetError);
  CHECK_THROWS_AS(class_metrics(perfect, ids({"a", "b"})), VocabularyMismatchError);

  auto reversed = perfect;
  std::reverse(reversed.begin(), reversed.end());
  const auto r = class_metrics(reversed, ids({"a", "b", "c", "d"}));
  CHECK(r.hamming_loss == m.hamming_loss);
  CHECK(render_metrics(r) == render_metrics(m));
}
