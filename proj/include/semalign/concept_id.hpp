#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semalign {

/// Case-sensitive label / concept identifier. Ordering is bytewise on the
/// UTF-8 encoding, which is the only collation used anywhere in output.
class ConceptId {
 public:
  ConceptId() = default;
  /// Throws ParseError when `text` is empty or carries surrounding whitespace.
  explicit ConceptId(std::string text);

  const std::string& str() const noexcept { return text_; }
  bool empty() const noexcept { return text_.empty(); }

  friend bool operator==(const ConceptId&, const ConceptId&) = default;
  friend std::strong_ordering operator<=>(const ConceptId& a,
                                          const ConceptId& b) noexcept {
    const int c = a.text_.compare(b.text_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const ConceptId& id) {
    return os << id.text_;
  }

 private:
  std::string text_;
};

/// Sorted, duplicate-free list of identifiers.
using LabelSet = std::vector<ConceptId>;

}  // namespace semalign

template <>
struct std::hash<semalign::ConceptId> {
  std::size_t operator()(const semalign::ConceptId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
