#include "semalign/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"
#include "semalign/errors.hpp"

namespace semalign {

using nlohmann::json;

LabelSet make_label_set(std::vector<ConceptId> labels,
                        const std::string& context) {
  std::sort(labels.begin(), labels.end());
  if (auto dup = std::adjacent_find(labels.begin(), labels.end());
      dup != labels.end())
    throw DuplicateLabelError(context + ": label '" + dup->str() +
                              "' listed twice");
  return labels;
}

namespace {

std::string read_all(std::istream& source) {
  std::ostringstream buf;
  buf << source.rdbuf();
  return buf.str();
}

std::string item_key(const json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(std::string(what) + " id must be a string or an integer");
}

std::vector<ConceptId> labels_of(const json& node, const char* field,
                                 const std::string& owner) {
  if (!node.contains(field) || !node.at(field).is_array())
    throw ParseError(owner + ": '" + field + "' must be an array of labels");
  std::vector<ConceptId> out;
  for (const json& v : node.at(field)) {
    if (!v.is_string())
      throw ParseError(owner + ": '" + field + "' must contain only strings");
    out.emplace_back(v.get<std::string>());
  }
  return out;
}

std::vector<json> records_of(const std::string& text) {
  std::vector<json> out;
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return out;
    if (text[first] == '[') {
      for (json& r : json::parse(text)) out.push_back(std::move(r));
      return out;
    }
    std::istringstream in(text);
    while (true) {
      in >> std::ws;
      if (in.peek() == std::char_traits<char>::eof()) break;
      json r;
      in >> r;
      if (r.is_object() && r.contains("matrices") && !r.contains("item")) {
        if (!r["matrices"].is_array())
          throw ParseError("'matrices' must be an array");
        for (json& m : r["matrices"]) out.push_back(std::move(m));
      } else {
        out.push_back(std::move(r));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix document is not valid JSON: ") +
                     e.what());
  }
  return out;
}

SimilarityMatrix parse_matrix(const json& r) {
  if (!r.is_object() || !r.contains("item"))
    throw ParseError("matrix record needs an 'item' field");
  const std::string item = item_key(r["item"], "matrix item");
  const std::string owner = "matrix for item '" + item + "'";

  const json* mj = r.contains("measure") ? &r["measure"] : nullptr;
  if (!mj || !mj->is_object() || !mj->contains("name") ||
      !(*mj)["name"].is_string() || !mj->contains("min") ||
      !(*mj)["min"].is_number() || !mj->contains("max") ||
      !(*mj)["max"].is_number())
    throw ParseError(owner + ": 'measure' needs string 'name' and numeric "
                             "'min' and 'max'");
  MeasureDescriptor measure{(*mj)["name"].get<std::string>(),
                            (*mj)["min"].get<double>(),
                            (*mj)["max"].get<double>()};
  measure.check();

  auto rows = labels_of(r, "rows", owner);
  auto cols = labels_of(r, "cols", owner);
  if (!r.contains("cells") || !r["cells"].is_array() ||
      r["cells"].size() != rows.size())
    throw ParseError(owner + ": 'cells' must hold one array per row");
  std::vector<double> cells;
  for (const json& line : r["cells"]) {
    if (!line.is_array() || line.size() != cols.size())
      throw ParseError(owner + ": every row of 'cells' needs " +
                       std::to_string(cols.size()) + " values");
    for (const json& v : line) {
      if (!v.is_number()) throw ParseError(owner + ": cells must be numbers");
      cells.push_back(v.get<double>());
    }
  }
  return SimilarityMatrix(item, std::move(measure), std::move(rows),
                          std::move(cols), std::move(cells));
}

}  // namespace

std::vector<ItemLabels> load_items(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::exception& e) {
    throw ParseError(std::string("items document is not valid JSON: ") +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_array())
    throw ParseError("items document needs an array 'items'");

  std::vector<ItemLabels> items;
  std::vector<std::string> seen;
  for (const json& node : doc["items"]) {
    if (!node.is_object() || !node.contains("id"))
      throw ParseError("every item needs an 'id'");
    ItemLabels item;
    item.id = item_key(node["id"], "item");
    if (item.id.empty()) throw ParseError("item id must not be empty");
    const std::string owner = "item '" + item.id + "'";
    item.expected =
        make_label_set(labels_of(node, "expected", owner), owner + " expected");
    item.predicted = make_label_set(labels_of(node, "predicted", owner),
                                    owner + " predicted");
    seen.push_back(item.id);
    items.push_back(std::move(item));
  }
  std::sort(seen.begin(), seen.end());
  if (auto dup = std::adjacent_find(seen.begin(), seen.end());
      dup != seen.end())
    throw DuplicateItemIdError("item id '" + *dup + "' used twice");
  return items;
}

std::vector<SimilarityMatrix> load_precomputed(
    std::istream& source, const std::vector<ItemLabels>& items) {
  std::map<std::string, const ItemLabels*> by_id;
  for (const ItemLabels& item : items) by_id[item.id] = &item;

  std::map<std::string, SimilarityMatrix> found;
  std::optional<MeasureDescriptor> measure;
  for (const json& record : records_of(read_all(source))) {
    SimilarityMatrix m = parse_matrix(record);
    const auto it = by_id.find(m.item_id());
    if (it == by_id.end())
      throw MissingItemError("matrix given for unknown item '" + m.item_id() +
                             "'");
    if (found.count(m.item_id()))
      throw DuplicateItemIdError("two matrices given for item '" +
                                 m.item_id() + "'");
    if (m.rows() != it->second->expected || m.cols() != it->second->predicted)
      throw LabelSetMismatchError(
          "matrix for item '" + m.item_id() +
          "' must have the expected labels as rows and the predicted labels "
          "as columns");
    if (measure && *measure != m.measure())
      throw ParseError("matrix for item '" + m.item_id() +
                       "' declares a different measure than earlier records");
    measure = m.measure();
    m.check_bounds();
    found.emplace(m.item_id(), std::move(m));
  }

  std::vector<SimilarityMatrix> out;
  out.reserve(items.size());
  for (const ItemLabels& item : items) {
    auto it = found.find(item.id);
    if (it == found.end())
      throw MissingItemError("no similarity matrix for item '" + item.id + "'");
    out.push_back(std::move(it->second));
  }
  return out;
}

LabelSet load_vocabulary(std::istream& source) {
  const std::string text = read_all(source);
  std::vector<ConceptId> labels;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("vocabulary is not valid JSON: ") +
                       e.what());
    }
    for (const json& v : doc) {
      if (!v.is_string())
        throw ParseError("vocabulary must contain only strings");
      labels.emplace_back(v.get<std::string>());
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      labels.emplace_back(line);
    }
  }
  return make_label_set(std::move(labels), "vocabulary");
}

std::string items_to_json(const std::vector<ItemLabels>& items) {
  json arr = json::array();
  for (const ItemLabels& item : items) {
    json e = json::array(), p = json::array();
    for (const auto& l : item.expected) e.push_back(l.str());
    for (const auto& l : item.predicted) p.push_back(l.str());
    arr.push_back({{"id", item.id}, {"expected", e}, {"predicted", p}});
  }
  return json{{"items", arr}}.dump(2) + "\n";
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

std::string matrix_to_json(const SimilarityMatrix& m,
                           std::optional<int> decimals) {
  json rows = json::array(), cols = json::array(), cells = json::array();
  for (const auto& r : m.rows()) rows.push_back(r.str());
  for (const auto& c : m.cols()) cols.push_back(c.str());
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    json line = json::array();
    for (std::size_t c = 0; c < m.col_count(); ++c)
      line.push_back(decimals ? round_to(m.at(r, c), *decimals) : m.at(r, c));
    cells.push_back(std::move(line));
  }
  json doc;
  doc["item"] = m.item_id();
  doc["measure"] = {{"name", m.measure().name},
                    {"min", m.measure().min_value},
                    {"max", m.measure().max_value}};
  doc["rows"] = std::move(rows);
  doc["cols"] = std::move(cols);
  doc["cells"] = std::move(cells);
  return doc.dump();
}

}  // namespace semalign
