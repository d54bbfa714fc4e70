#include "semalign/concept_id.hpp"

#include <cctype>

#include "semalign/errors.hpp"

namespace semalign {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

ConceptId::ConceptId(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw ParseError("identifier must not be empty");
  if (is_space(text_.front()) || is_space(text_.back()))
    throw ParseError("identifier '" + text_ +
                     "' has leading or trailing whitespace");
}

}  // namespace semalign
