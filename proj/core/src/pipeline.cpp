#include "lpmabs/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <variant>

#include "lpmabs/errors.hpp"
#include "lpmabs/lpm_io.hpp"
#include "lpmabs/pnml.hpp"
#include "lpmabs/text_io.hpp"
#include "lpmabs/xes.hpp"

namespace lpmabs {

StageError::StageError(std::string stage, const std::string& message)
    : Error(stage + ": " + message), stage_(std::move(stage)) {}

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
}

std::size_t to_size(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    auto n = std::stoull(v, &used);
    if (used == v.size() && !v.empty() && v.front() != '-') return static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
  }
  throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string_view to_string(FilterOrder order) {
  return order == FilterOrder::topk_then_filter ? "topk_then_filter" : "filter_then_topk";
}

FilterOrder parse_filter_order(std::string_view text) {
  if (text == "topk_then_filter") return FilterOrder::topk_then_filter;
  if (text == "filter_then_topk") return FilterOrder::filter_then_topk;
  throw ConfigError("unknown order '" + std::string(text) + "' (expected topk_then_filter or filter_then_topk)");
}

void PipelineConfig::validate() const {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (!(t_div >= 0.0 && t_div <= 1.0)) throw ConfigError("t_div must lie in [0, 1]");
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("noise must lie in [0, 1)");
  if (state_limit == 0) throw ConfigError("state_limit must be positive");
  if (search.max_activities == 0) throw ConfigError("max_activities must be positive");
}

void PipelineConfig::apply(const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [raw_key, value] : entries) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "input") input = value;
    else if (key == "output") output = value;
    else if (key == "k") k = to_size(key, value);
    else if (key == "t_div") t_div = to_double(key, value);
    else if (key == "composition") composition = parse_composition(value);
    else if (key == "noise") noise = to_double(key, value);
    else if (key == "keep_foreign") keep_foreign = to_bool(key, value);
    else if (key == "order") order = parse_filter_order(value);
    else if (key == "state_limit") search.state_limit = state_limit = to_size(key, value);
    else if (key == "max_activities") search.max_activities = to_size(key, value);
    else if (key == "beam_width") search.beam_width = to_size(key, value);
    else if (key == "min_support") search.min_support = to_size(key, value);
    else if (key == "max_results") search.max_results = to_size(key, value);
    else if (key == "exhaustive") search.exhaustive = to_bool(key, value);
    else if (key == "case_column") csv.case_column = value;
    else if (key == "activity_column") csv.activity_column = value;
    else if (key == "time_column") csv.time_column = value;
    else if (key == "separator") {
      if (value.size() != 1) throw ConfigError("separator must be a single character");
      csv.separator = value.front();
    } else if (key == "rename") {
      for (const auto& pair : split(value, ',')) {
        auto colon = pair.find(':');
        if (colon == std::string::npos) throw ConfigError("rename expects FROM:TO pairs, got '" + pair + "'");
        renames[std::string(trim(pair.substr(0, colon)))] = std::string(trim(pair.substr(colon + 1)));
      }
    } else {
      throw ConfigError("unknown configuration key '" + raw_key + "'");
    }
  }
}

EventLog read_log(const std::filesystem::path& path, const CsvColumns& csv) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return read_csv(path, csv);
  return read_xes(path);
}

BaselineResult run_baseline(const EventLog& log, double noise, std::size_t state_limit) {
  BaselineResult r;
  r.tree = stage("baseline", [&] { return discover_model(log, noise); });
  r.net = tree_to_net(r.tree);
  r.report = stage("baseline", [&] { return evaluate(log, r.net, state_limit); });
  return r;
}

AbstractionResult run_abstraction(const EventLog& log, std::vector<LocalProcessModel> selected,
                                  const PipelineConfig& config) {
  if (selected.empty()) throw StageError("filter", "no LPM survived the diversity filter");
  AbstractionResult r;
  r.selected = std::move(selected);
  stage("abstract", [&] {
    r.patterns = make_patterns(r.selected, config.renames);
    r.model = compose(r.patterns, config.composition);
    r.abstracted = abstract_log(log, r.model, config.keep_foreign, config.state_limit);
  });
  r.high_tree = stage("discover", [&] { return discover_model(r.abstracted, config.noise); });
  r.high_net = tree_to_net(r.high_tree);
  stage("evaluate", [&] {
    r.expanded = expand_model(r.high_net, r.patterns);
    r.report = evaluate(log, r.expanded, config.state_limit);
  });
  return r;
}

PipelineResult run_pipeline(const EventLog& log, const PipelineConfig& config) {
  stage("config", [&] { config.validate(); });
  PipelineResult r;
  r.ranking = stage("discover-lpms", [&] { return discover_lpms(log, config.search); });
  auto selected = stage("filter", [&] { return filter_diverse(r.ranking, config.t_div, config.k, config.order); });
  r.abstraction = run_abstraction(log, std::move(selected), config);
  r.baseline = run_baseline(log, config.noise, config.state_limit);
  return r;
}

PipelineResult run_pipeline_to_disk(const PipelineConfig& config) {
  namespace fs = std::filesystem;
  auto log = stage("read", [&] { return read_log(config.input, config.csv); });
  auto result = run_pipeline(log, config);

  stage("write", [&] {
    if (config.output.empty()) throw ConfigError("no output directory given");
    auto target = fs::absolute(config.output);
    auto parent = target.parent_path();
    fs::create_directories(parent);
    auto staging = parent / ("." + target.filename().string() + ".partial");
    fs::remove_all(staging);
    try {
      fs::create_directories(staging);
      std::vector<double> diversity;
      for (std::size_t i = 1; i <= result.ranking.size(); ++i) diversity.push_back(lpmabs::diversity(result.ranking, i));
      write_lpm_directory(staging / "lpms", result.ranking.models, diversity);

      std::string selected = "# name\trank\ttree\n";
      for (const auto& p : result.abstraction.patterns)
        selected += p.name.label() + "\t" + std::to_string(p.lpm.rank) + "\t" + p.lpm.describe() + "\n";
      write_file(staging / "selected.txt", selected);

      const auto& a = result.abstraction;
      write_file(staging / "abstracted.xes", write_xes(a.abstracted));
      write_file(staging / "model.pnml", write_pnml(a.high_net, a.high_tree.to_string()));
      write_file(staging / "model.tree", a.high_tree.to_string() + "\n");
      write_file(staging / "expanded.pnml", write_pnml(a.expanded, "expanded"));
      write_file(staging / "abstraction_model.pnml", write_pnml(a.model.net, "abstraction", a.model.annotations()));
      write_file(staging / "baseline.pnml", write_pnml(result.baseline.net, result.baseline.tree.to_string()));
      SweepRow row{"log", config.k, config.t_div, config.composition, a.patterns.size(), a.report,
                   result.baseline.report, ""};
      row.log = config.input.filename().string();
      write_file(staging / "report.csv", csv_header() + csv_row(row));
      write_file(staging / "report.txt", to_key_values(a.report));

      fs::remove_all(target);
      fs::rename(staging, target);
    } catch (...) {
      std::error_code ec;
      fs::remove_all(staging, ec);
      throw;
    }
  });
  return result;
}

std::vector<SweepRow> run_sweep(const EventLog& log, const SweepConfig& config) {
  const auto& base = config.base;
  auto ranking = stage("discover-lpms", [&] { return discover_lpms(log, base.search); });
  auto baseline = run_baseline(log, base.noise, base.state_limit);

  std::map<std::pair<std::vector<std::size_t>, Composition>, std::variant<QualityReport, std::string>> cache;
  std::vector<SweepRow> rows;
  for (auto composition : config.compositions) {
    for (auto k : config.ks) {
      for (auto t_div : config.t_divs) {
        SweepRow row;
        row.log = config.log_name;
        row.k = k;
        row.t_div = t_div;
        row.composition = composition;
        row.baseline = baseline.report;
        try {
          auto cell = base;
          cell.k = k;
          cell.t_div = t_div;
          cell.composition = composition;
          stage("config", [&] { cell.validate(); });
          auto selected = stage("filter", [&] { return filter_diverse(ranking, t_div, k, cell.order); });
          row.patterns = selected.size();
          std::vector<std::size_t> ranks;
          for (const auto& m : selected) ranks.push_back(m.rank);
          auto key = std::make_pair(ranks, composition);
          auto it = cache.find(key);
          if (it == cache.end()) {
            try {
              it = cache.emplace(key, run_abstraction(log, std::move(selected), cell).report).first;
            } catch (const Error& e) {
              it = cache.emplace(key, std::string(e.what())).first;
            }
          }
          if (auto* report = std::get_if<QualityReport>(&it->second)) row.report = *report;
          else row.error = std::get<std::string>(it->second);
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string csv_header() {
  return "log,k,t_div,composition,patterns,fitness,precision,f_score,"
         "baseline_fitness,baseline_precision,baseline_f_score,status,error\n";
}

std::string csv_row(const SweepRow& row) {
  char tdiv[16];
  std::snprintf(tdiv, sizeof tdiv, "%.2f", row.t_div);
  std::string out = csv_field(row.log) + "," + std::to_string(row.k) + "," + tdiv + "," +
                    std::string(to_string(row.composition)) + "," + std::to_string(row.patterns) + ",";
  if (row.report) out += fixed(row.report->fitness) + "," + fixed(row.report->precision) + "," + fixed(row.report->f_score);
  else out += ",,";
  out += "," + fixed(row.baseline.fitness) + "," + fixed(row.baseline.precision) + "," + fixed(row.baseline.f_score);
  out += row.report ? ",ok," : ",error," + csv_field(row.error);
  return out + "\n";
}

}  // namespace lpmabs
