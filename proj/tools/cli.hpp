#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semalign::cli {

struct RunConfig {
  std::optional<std::string> taxonomy_path;
  std::optional<std::string> items_path;
  std::optional<std::string> precomputed_path;
  std::optional<std::string> measure;  // unset means "feature"
  std::optional<double> threshold;
  std::string format = "csv";
  bool format_given = false;
  bool spurious_column = false;
  std::optional<std::string> vocabulary_path;
  int jobs = 1;
};

/// Runs one command line (without the program name). Documents go to
/// `out` only after the whole command succeeded; errors are written to
/// `err` as `{"error": {"code", "message"}}`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace semalign::cli
