#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "semalign/alignment.hpp"
#include "semalign/confusion.hpp"
#include "semalign/dataset.hpp"
#include "semalign/errors.hpp"
#include "semalign/kernels.hpp"
#include "semalign/semsim.hpp"
#include "semalign/taxonomy.hpp"

namespace semalign::cli {

namespace {

using nlohmann::json;

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

std::vector<ItemLabels> read_items(const RunConfig& cfg) {
  if (!cfg.items_path) throw ConfigError("--items is required");
  auto in = open(*cfg.items_path);
  return load_items(in);
}

std::optional<LabelSet> read_vocabulary(const RunConfig& cfg) {
  if (!cfg.vocabulary_path) return std::nullopt;
  auto in = open(*cfg.vocabulary_path);
  return load_vocabulary(in);
}

Taxonomy read_taxonomy(const RunConfig& cfg) {
  if (!cfg.taxonomy_path) throw ConfigError("--taxonomy is required");
  auto in = open(*cfg.taxonomy_path);
  return load_taxonomy(in);
}

// Similarity matrices for every item, from either source.
struct Matrices {
  std::vector<ItemLabels> items;
  std::vector<SimilarityMatrix> matrices;
  std::optional<MeasureDescriptor> measure;
};

Matrices build_matrices(const RunConfig& cfg) {
  const bool tax = cfg.taxonomy_path.has_value();
  const bool pre = cfg.precomputed_path.has_value();
  if (tax == pre)
    throw ConfigError(
        "exactly one of --taxonomy (with --measure) or --precomputed is "
        "required");
  if (pre && cfg.measure)
    throw ConfigError("--measure cannot be combined with --precomputed");

  Matrices out;
  out.items = read_items(cfg);
  if (tax) {
    const std::string name = cfg.measure.value_or("feature");
    const auto kind = parse_measure_kind(name);
    if (!kind)
      throw ConfigError("unknown measure '" + name + "' (feature, path)");
    const Taxonomy t = read_taxonomy(cfg);
    out.matrices = parallel::compute_matrices(t, out.items, *kind, cfg.jobs);
    out.measure = descriptor_for(*kind);
  } else {
    auto in = open(*cfg.precomputed_path);
    out.matrices = load_precomputed(in, out.items);
    if (!out.matrices.empty()) out.measure = out.matrices.front().measure();
  }
  return out;
}

double resolve_threshold(const RunConfig& cfg,
                         const std::optional<MeasureDescriptor>& measure) {
  if (!measure) return cfg.threshold.value_or(0.0);
  if (!cfg.threshold) return measure->threshold();
  if (*cfg.threshold < measure->min_value ||
      *cfg.threshold > measure->max_value)
    throw ConfigError("--threshold must lie in [" +
                      std::to_string(measure->min_value) + ", " +
                      std::to_string(measure->max_value) + "]");
  return *cfg.threshold;
}

std::vector<AlignmentSet> build_alignments(const RunConfig& cfg,
                                           Matrices& data) {
  const double tau = resolve_threshold(cfg, data.measure);
  return parallel::align_all(data.matrices, tau, cfg.jobs);
}

void require_json_format(const RunConfig& cfg, const char* command) {
  if (cfg.format_given && cfg.format != "json")
    throw ConfigError(std::string("'") + command + "' only emits json");
}

std::string alignment_record(const AlignmentSet& a) {
  json pairs = json::array();
  for (const AlignmentPair& p : a.pairs)
    pairs.push_back({{"expected", p.expected.str()},
                     {"predicted", p.predicted.str()},
                     {"similarity", round_to(p.similarity, 3)}});
  json ue = json::array(), up = json::array();
  for (const auto& l : a.unmatched_expected) ue.push_back(l.str());
  for (const auto& l : a.unmatched_predicted) up.push_back(l.str());
  json doc;
  doc["item"] = a.item_id;
  doc["pairs"] = std::move(pairs);
  doc["unmatched_expected"] = std::move(ue);
  doc["unmatched_predicted"] = std::move(up);
  return doc.dump();
}

std::string cmd_sim(const RunConfig& cfg) {
  require_json_format(cfg, "sim");
  Matrices data = build_matrices(cfg);
  std::string out;
  for (const auto& m : data.matrices) out += matrix_to_json(m) + "\n";
  return out;
}

std::string cmd_align(const RunConfig& cfg) {
  require_json_format(cfg, "align");
  Matrices data = build_matrices(cfg);
  std::string out;
  for (const auto& a : build_alignments(cfg, data))
    out += alignment_record(a) + "\n";
  return out;
}

std::string cmd_matrix(const RunConfig& cfg) {
  MatrixFormat format;
  if (cfg.format == "csv")
    format = MatrixFormat::Csv;
  else if (cfg.format == "json")
    format = MatrixFormat::Json;
  else
    throw ConfigError("unknown format '" + cfg.format + "' (csv, json)");

  Matrices data = build_matrices(cfg);
  const Scaffold scaffold = make_scaffold(data.items, read_vocabulary(cfg));
  const auto alignments = build_alignments(cfg, data);
  const ConfusionMatrix m = parallel::accumulate(
      alignments, scaffold, cfg.spurious_column, cfg.jobs);
  return render(m, format);
}

std::string cmd_metrics(const RunConfig& cfg) {
  require_json_format(cfg, "metrics");
  if (cfg.taxonomy_path && cfg.precomputed_path)
    throw ConfigError("--taxonomy and --precomputed are mutually exclusive");
  const auto items = read_items(cfg);
  auto vocabulary = read_vocabulary(cfg);
  if (!vocabulary) vocabulary = make_scaffold(items).rows;
  return render_metrics(class_metrics(items, *vocabulary));
}

std::string cmd_validate(const RunConfig& cfg) {
  require_json_format(cfg, "validate");
  const ValidationReport report = validate(read_taxonomy(cfg));
  json warnings = json::array();
  for (const auto& w : report.warnings)
    warnings.push_back(
        {{"concept", w.label.str()}, {"kind", w.kind}, {"message", w.message}});
  json doc = {{"concept_count", report.concept_count},
              {"max_depth", report.max_depth},
              {"structural_errors", report.structural_errors},
              {"warnings", warnings}};
  return doc.dump(2) + "\n";
}

void write_error(std::ostream& err, const std::string& code,
                 const std::string& message) {
  json doc = {{"error", {{"code", code}, {"message", message}}}};
  err << doc.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Semantic alignment of multi-label predictions and confusion "
               "matrix construction",
               "semalign"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--taxonomy", cfg.taxonomy_path, "Taxonomy JSON document");
    sub->add_option("--items", cfg.items_path, "Items JSON document");
    sub->add_option("--precomputed", cfg.precomputed_path,
                    "Precomputed similarity matrices");
    sub->add_option("--measure", cfg.measure, "Similarity measure")
        ->check(CLI::IsMember({"feature", "path"}));
    sub->add_option("--threshold", cfg.threshold,
                    "Alignment threshold (default: midpoint of the measure "
                    "range)");
    sub->add_option("--format", cfg.format, "Output format for 'matrix'")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--spurious-column", cfg.spurious_column,
                  "Add a column counting unmatched predicted labels");
    sub->add_option("--vocabulary", cfg.vocabulary_path,
                    "Closed class set (JSON array or one label per line)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
  };

  struct Command {
    const char* name;
    const char* help;
    std::string (*fn)(const RunConfig&);
    CLI::App* sub = nullptr;
  };
  std::vector<Command> commands = {
      {"sim", "Emit per-item similarity matrices", cmd_sim},
      {"align", "Emit per-item label alignments", cmd_align},
      {"matrix", "Emit the confusion matrix", cmd_matrix},
      {"metrics", "Emit set-based per-class metrics", cmd_metrics},
      {"validate", "Emit the taxonomy validation report", cmd_validate},
  };
  for (auto& c : commands) {
    c.sub = app.add_subcommand(c.name, c.help);
    add_common(c.sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "CONFIG_ERROR", e.what());
    return 1;
  }

  for (const auto& c : commands) {
    if (!c.sub->parsed()) continue;
    cfg.format_given = c.sub->count("--format") > 0;
    try {
      const std::string document = c.fn(cfg);
      out << document;
      out.flush();
      return 0;
    } catch (const Error& e) {
      write_error(err, e.code(), e.what());
    } catch (const std::exception& e) {
      write_error(err, "INTERNAL", e.what());
    }
    return 1;
  }
  return 1;
}

}  // namespace semalign::cli
