#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lpmabs/abstraction.hpp"
#include "lpmabs/conformance.hpp"
#include "lpmabs/discovery.hpp"
#include "lpmabs/diversity.hpp"
#include "lpmabs/errors.hpp"
#include "lpmabs/generator.hpp"
#include "lpmabs/lpm_discovery.hpp"
#include "lpmabs/lpm_io.hpp"
#include "lpmabs/pipeline.hpp"
#include "lpmabs/pnml.hpp"
#include "lpmabs/text_io.hpp"
#include "lpmabs/xes.hpp"

namespace fs = std::filesystem;
using namespace lpmabs;

namespace {

constexpr int kUsageError = 1;
constexpr int kStageError = 2;

/// Raised for inconsistent command-line input detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Options collected as key/value pairs so that they can be layered over a config file.
class Settings {
 public:
  void option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(flag, [this, key](const std::string& v) { values_[key] = v; }, help);
  }
  void flag(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_flag_callback(flag, [this, key] { values_[key] = "true"; }, help);
  }

  /// Config file entries first, command-line values override them.
  std::vector<std::pair<std::string, std::string>> entries(const std::string& config_file) const {
    std::vector<std::pair<std::string, std::string>> out;
    if (!config_file.empty()) out = parse_key_values(read_file(config_file));
    for (const auto& kv : values_) out.push_back(kv);
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

void add_search_options(CLI::App* app, Settings& s) {
  s.option(app, "--max-activities", "max_activities", "Largest LPM activity count (default 5)");
  s.option(app, "--beam-width", "beam_width", "Trees kept per size during LPM search (default 50)");
  s.option(app, "--min-support", "min_support", "Smallest support an LPM may have (default 2)");
  s.option(app, "--max-results", "max_results", "Length of the LPM ranking (default 100)");
  s.flag(app, "--exhaustive", "exhaustive", "Keep every candidate instead of a beam");
  s.option(app, "--state-limit", "state_limit", "State limit of every net search (default 100000)");
}

void add_log_options(CLI::App* app, Settings& s) {
  s.option(app, "--case-column", "case_column", "CSV input: case id column (default case)");
  s.option(app, "--activity-column", "activity_column", "CSV input: activity column (default activity)");
  s.option(app, "--time-column", "time_column", "CSV input: timestamp column");
  s.option(app, "--separator", "separator", "CSV input: field separator (default ,)");
}

void add_selection_options(CLI::App* app, Settings& s) {
  s.option(app, "-k,--k", "k", "Number of LPMs to use (default 3)");
  s.option(app, "--t-div", "t_div", "Diversity threshold in [0,1] (default 0.5)");
  s.option(app, "--order", "order", "topk_then_filter or filter_then_topk");
  s.option(app, "--composition", "composition", "interleaving or parallel");
  s.flag(app, "--keep-foreign", "keep_foreign", "Keep events outside every pattern alphabet");
  s.option(app, "--rename", "rename", "Pattern renames, e.g. LPM_1:Payment,LPM_2:Shipping");
}

PipelineConfig make_config(const Settings& s, const std::string& config_file) {
  PipelineConfig config;
  config.apply(s.entries(config_file));
  config.validate();
  return config;
}

std::vector<LocalProcessModel> select_patterns(const fs::path& lpm_dir, const PipelineConfig& config) {
  LpmRanking ranking;
  for (auto& stored : read_lpm_directory(lpm_dir)) ranking.models.push_back(std::move(stored.model));
  for (std::size_t i = 0; i < ranking.models.size(); ++i) ranking.models[i].rank = i + 1;
  if (ranking.empty()) throw Error("no LPMs found in '" + lpm_dir.string() + "'");
  return filter_diverse(ranking, config.t_div, config.k, config.order);
}

template <typename T>
std::vector<T> parse_list(const std::string& text, T (*parse)(const std::string&)) {
  std::vector<T> out;
  for (const auto& item : split(text, ','))
    if (!trim(item).empty()) out.push_back(parse(std::string(trim(item))));
  return out;
}

std::size_t parse_size(const std::string& s) {
  std::size_t used = 0;
  auto v = std::stoull(s, &used);
  if (used != s.size()) throw ConfigError("expected an integer, got '" + s + "'");
  return v;
}
double parse_double(const std::string& s) {
  std::size_t used = 0;
  auto v = std::stod(s, &used);
  if (used != s.size()) throw ConfigError("expected a number, got '" + s + "'");
  return v;
}
Composition parse_comp(const std::string& s) { return parse_composition(s); }

void print_report(const char* title, const QualityReport& r) {
  std::printf("%s fitness=%.4f precision=%.4f f_score=%.4f\n", title, r.fitness, r.precision, r.f_score);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event abstraction with local process models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("lpmabs 0.1.0"));

  std::string config_file, input, output, lpm_dir, model_path, spec_file;
  Settings settings;

  auto with_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_file, "Key=value configuration file")->check(CLI::ExistingFile);
  };

  auto* discover_lpms_cmd = app.add_subcommand("discover-lpms", "Mine and rank local process models");
  discover_lpms_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)")->required();
  discover_lpms_cmd->add_option("-o,--output", output, "Directory for the ranking")->required();
  add_search_options(discover_lpms_cmd, settings);
  add_log_options(discover_lpms_cmd, settings);
  with_common(discover_lpms_cmd);

  auto* abstract_cmd = app.add_subcommand("abstract", "Lift a log to high-level activities");
  abstract_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)")->required();
  abstract_cmd->add_option("-l,--lpms", lpm_dir, "LPM directory or a single PNML pattern")->required();
  abstract_cmd->add_option("-o,--output", output, "Abstracted log (.xes)")->required();
  abstract_cmd->add_option("--model-output", model_path, "Write the abstraction model as PNML");
  add_selection_options(abstract_cmd, settings);
  add_log_options(abstract_cmd, settings);
  settings.option(abstract_cmd, "--state-limit", "state_limit", "State limit of every net search");
  with_common(abstract_cmd);

  auto* discover_cmd = app.add_subcommand("discover", "Discover a process model");
  discover_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)")->required();
  discover_cmd->add_option("-o,--output", output, "Model (.pnml)")->required();
  settings.option(discover_cmd, "--noise", "noise", "Noise threshold in [0,1) (default 0.2)");
  add_log_options(discover_cmd, settings);
  with_common(discover_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Fitness, precision and F-score of a model");
  evaluate_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)")->required();
  evaluate_cmd->add_option("-m,--model", model_path, "Model (.pnml)")->required();
  evaluate_cmd->add_option("-l,--lpms", lpm_dir, "Expand pattern-labeled transitions with these LPMs first");
  add_selection_options(evaluate_cmd, settings);
  add_log_options(evaluate_cmd, settings);
  settings.option(evaluate_cmd, "--state-limit", "state_limit", "State limit of every net search");
  with_common(evaluate_cmd);

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run every stage and write a run directory");
  pipeline_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)");
  pipeline_cmd->add_option("-o,--output", output, "Run directory");
  add_search_options(pipeline_cmd, settings);
  add_selection_options(pipeline_cmd, settings);
  add_log_options(pipeline_cmd, settings);
  settings.option(pipeline_cmd, "--noise", "noise", "Discovery noise threshold (default 0.2)");
  with_common(pipeline_cmd);

  std::string k_values = "1,2,3,4,5", t_values = "0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
              compositions = "interleaving,parallel";
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a grid of k, t_div and composition values");
  sweep_cmd->add_option("-i,--input", input, "Event log (.xes or .csv)")->required();
  sweep_cmd->add_option("-o,--output", output, "CSV report (stdout when omitted)");
  sweep_cmd->add_option("--k-values", k_values, "Comma-separated k values")->capture_default_str();
  sweep_cmd->add_option("--t-div-values", t_values, "Comma-separated thresholds")->capture_default_str();
  sweep_cmd->add_option("--compositions", compositions, "Comma-separated compositions")->capture_default_str();
  add_search_options(sweep_cmd, settings);
  add_log_options(sweep_cmd, settings);
  settings.option(sweep_cmd, "--order", "order", "topk_then_filter or filter_then_topk");
  settings.flag(sweep_cmd, "--keep-foreign", "keep_foreign", "Keep events outside every pattern alphabet");
  settings.option(sweep_cmd, "--noise", "noise", "Discovery noise threshold (default 0.2)");
  with_common(sweep_cmd);

  Settings gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a log with planted patterns");
  generate_cmd->add_option("-s,--spec", spec_file, "Generator key=value file")->check(CLI::ExistingFile);
  generate_cmd->add_option("-o,--output", output, "Log file (.xes)")->required();
  gen.option(generate_cmd, "--patterns", "patterns", "Pattern trees separated by ';'");
  gen.option(generate_cmd, "--traces", "traces", "Number of traces");
  gen.option(generate_cmd, "--instances", "instances", "Instances per pattern and trace, N or MIN..MAX");
  gen.option(generate_cmd, "--noise", "noise", "Expected fraction of injected events");
  gen.option(generate_cmd, "--noise-activities", "noise_activities", "Labels of injected events, or 'patterns'");
  gen.option(generate_cmd, "--composition", "composition", "interleaving or parallel");
  gen.option(generate_cmd, "--seed", "seed", "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    auto config = [&] {
      try {
        return make_config(settings, config_file);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    };

    if (*discover_lpms_cmd) {
      auto cfg = config();
      auto log = read_log(input, cfg.csv);
      auto ranking = discover_lpms(log, cfg.search);
      std::vector<double> div;
      for (std::size_t i = 1; i <= ranking.size(); ++i) div.push_back(diversity(ranking, i));
      write_lpm_directory(output, ranking.models, div);
      std::printf("%zu LPMs written to %s\n", ranking.size(), output.c_str());
      for (std::size_t i = 0; i < std::min<std::size_t>(ranking.size(), 10); ++i)
        std::printf("%3zu  support=%-6zu %s\n", i + 1, ranking.models[i].support, ranking.models[i].describe().c_str());
    } else if (*abstract_cmd) {
      auto cfg = config();
      auto log = read_log(input, cfg.csv);
      auto patterns = make_patterns(select_patterns(lpm_dir, cfg), cfg.renames);
      auto model = compose(patterns, cfg.composition);
      auto abstracted = abstract_log(log, model, cfg.keep_foreign, cfg.state_limit);
      write_file(output, write_xes(abstracted));
      if (!model_path.empty()) write_file(model_path, write_pnml(model.net, "abstraction", model.annotations()));
      for (const auto& p : patterns) std::printf("%s = %s\n", p.name.label().c_str(), p.lpm.describe().c_str());
    } else if (*discover_cmd) {
      auto cfg = config();
      auto log = read_log(input, cfg.csv);
      auto tree = discover_model(log, cfg.noise);
      write_file(output, write_pnml(tree_to_net(tree), tree.to_string()));
      std::printf("%s\n", tree.to_string().c_str());
    } else if (*evaluate_cmd) {
      auto cfg = config();
      auto log = read_log(input, cfg.csv);
      auto net = read_pnml(model_path);
      if (!lpm_dir.empty()) net = expand_model(net, make_patterns(select_patterns(lpm_dir, cfg), cfg.renames));
      std::fputs(to_key_values(evaluate(log, net, cfg.state_limit)).c_str(), stdout);
    } else if (*pipeline_cmd) {
      auto cfg = config();
      if (!input.empty()) cfg.input = input;
      if (!output.empty()) cfg.output = output;
      if (cfg.input.empty() || cfg.output.empty()) throw UsageError("pipeline needs an input log and an output directory");
      auto result = run_pipeline_to_disk(cfg);
      for (const auto& p : result.abstraction.patterns)
        std::printf("%s = %s\n", p.name.label().c_str(), p.lpm.describe().c_str());
      std::printf("high-level model: %s\n", result.abstraction.high_tree.to_string().c_str());
      print_report("expanded", result.abstraction.report);
      print_report("baseline", result.baseline.report);
    } else if (*sweep_cmd) {
      SweepConfig sweep;
      sweep.base = config();
      try {
        sweep.ks = parse_list<std::size_t>(k_values, parse_size);
        sweep.t_divs = parse_list<double>(t_values, parse_double);
        sweep.compositions = parse_list<Composition>(compositions, parse_comp);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      sweep.log_name = fs::path(input).filename().string();
      auto log = read_log(input, sweep.base.csv);
      auto rows = run_sweep(log, sweep);
      std::string csv = csv_header();
      for (const auto& r : rows) csv += csv_row(r);
      if (output.empty()) std::fputs(csv.c_str(), stdout);
      else write_file(output, csv);
    } else if (*generate_cmd) {
      GeneratorSpec spec;
      try {
        spec = GeneratorSpec::from_key_values(gen.entries(spec_file));
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      auto log = generate_log(spec);
      write_file(output, write_xes(log));
      std::printf("%zu traces, %zu events written to %s\n", log.size(), log.event_count(), output.c_str());
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "lpmabs: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lpmabs: %s\n", e.what());
    return kStageError;
  }
  return 0;
}
