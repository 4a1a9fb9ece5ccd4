#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpmabs/abstraction.hpp"
#include "lpmabs/conformance.hpp"
#include "lpmabs/csv.hpp"
#include "lpmabs/discovery.hpp"
#include "lpmabs/errors.hpp"
#include "lpmabs/diversity.hpp"
#include "lpmabs/lpm_discovery.hpp"

namespace lpmabs {

/// An error raised inside one pipeline stage; `what()` is prefixed with the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  /// Column mapping used when the input is a CSV file.
  CsvColumns csv;
  std::size_t k = 3;
  double t_div = 0.5;
  Composition composition = Composition::interleaving;
  double noise = kDefaultDiscoveryNoise;
  bool keep_foreign = false;
  FilterOrder order = FilterOrder::topk_then_filter;
  std::size_t state_limit = kDefaultStateLimit;
  LpmSearchParams search;
  /// Generated pattern name -> user name.
  std::map<std::string, std::string> renames;

  /// Throws ConfigError when k == 0, t_div is outside [0, 1] or noise outside [0, 1).
  void validate() const;
  /// Applies `key=value` entries (keys as the CLI long options with '-' or '_').
  /// Throws ConfigError on unknown keys or malformed values.
  void apply(const std::vector<std::pair<std::string, std::string>>& entries);
};

std::string_view to_string(FilterOrder order);
FilterOrder parse_filter_order(std::string_view text);

/// Reads XES or CSV depending on the file extension.
EventLog read_log(const std::filesystem::path& path, const CsvColumns& csv = {});

struct BaselineResult {
  ProcessTree tree = ProcessTree::tau();
  AcceptingPetriNet net;
  QualityReport report;
};

/// Discovery and evaluation directly on `log`.
BaselineResult run_baseline(const EventLog& log, double noise, std::size_t state_limit = kDefaultStateLimit);

struct AbstractionResult {
  std::vector<LocalProcessModel> selected;
  std::vector<ActivityPattern> patterns;
  AbstractionModel model;
  EventLog abstracted;
  ProcessTree high_tree = ProcessTree::tau();
  AcceptingPetriNet high_net;
  AcceptingPetriNet expanded;
  QualityReport report;
};

/// Stages 3 and 4 plus evaluation for an already selected list of LPMs.
AbstractionResult run_abstraction(const EventLog& log, std::vector<LocalProcessModel> selected,
                                  const PipelineConfig& config);

struct PipelineResult {
  LpmRanking ranking;
  AbstractionResult abstraction;
  BaselineResult baseline;
};

/// Runs every stage in memory. Errors are rethrown as StageError.
PipelineResult run_pipeline(const EventLog& log, const PipelineConfig& config);

/// Reads `config.input`, runs the pipeline and writes the run directory
/// (`lpms/`, `abstracted.xes`, `model.pnml`, `expanded.pnml`, `report.csv`). Output is
/// staged in a sibling temporary directory and only renamed into place on success.
PipelineResult run_pipeline_to_disk(const PipelineConfig& config);

struct SweepConfig {
  PipelineConfig base;
  std::string log_name = "log";
  std::vector<std::size_t> ks = {1, 2, 3, 4, 5};
  std::vector<double> t_divs = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<Composition> compositions = {Composition::interleaving, Composition::parallel};
};

struct SweepRow {
  std::string log;
  std::size_t k = 0;
  double t_div = 0.0;
  Composition composition = Composition::interleaving;
  std::size_t patterns = 0;
  std::optional<QualityReport> report;
  QualityReport baseline;
  std::string error;
};

/// One row per (k, t_div, composition); failing cells become rows with `error` set.
/// LPM discovery and the baseline run once; cells selecting the same LPMs share work.
std::vector<SweepRow> run_sweep(const EventLog& log, const SweepConfig& config);

std::string csv_header();
std::string csv_row(const SweepRow& row);

}  // namespace lpmabs
