#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semalign {

/// Base of every error raised by the library. `code()` is a stable,
/// machine-readable identifier that the CLI reports on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define SEMALIGN_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(Code, message) {}     \
  };

SEMALIGN_DEFINE_ERROR(ParseError, "PARSE_ERROR")
SEMALIGN_DEFINE_ERROR(IoError, "IO_ERROR")
SEMALIGN_DEFINE_ERROR(ConfigError, "CONFIG_ERROR")

// taxonomy
SEMALIGN_DEFINE_ERROR(CycleError, "CYCLE")
SEMALIGN_DEFINE_ERROR(UnreachableRootError, "UNREACHABLE_ROOT")
SEMALIGN_DEFINE_ERROR(DuplicateIdError, "DUPLICATE_ID")
SEMALIGN_DEFINE_ERROR(UnknownConceptError, "UNKNOWN_CONCEPT")

// alignment
SEMALIGN_DEFINE_ERROR(LabelNotInMatrixError, "LABEL_NOT_IN_MATRIX")

// confusion matrix and metrics
SEMALIGN_DEFINE_ERROR(VocabularyMismatchError, "VOCABULARY_MISMATCH")
SEMALIGN_DEFINE_ERROR(ScaffoldMismatchError, "SCAFFOLD_MISMATCH")
SEMALIGN_DEFINE_ERROR(EmptyDatasetError, "EMPTY_DATASET")

// dataset
SEMALIGN_DEFINE_ERROR(DuplicateLabelError, "DUPLICATE_LABEL")
SEMALIGN_DEFINE_ERROR(DuplicateItemIdError, "DUPLICATE_ITEM_ID")
SEMALIGN_DEFINE_ERROR(MissingItemError, "MISSING_ITEM")
SEMALIGN_DEFINE_ERROR(LabelSetMismatchError, "LABEL_SET_MISMATCH")
SEMALIGN_DEFINE_ERROR(OutOfBoundsCellError, "OUT_OF_BOUNDS_CELL")

#undef SEMALIGN_DEFINE_ERROR

}  // namespace semalign
