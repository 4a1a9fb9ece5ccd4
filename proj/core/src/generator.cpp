#include "lpmabs/generator.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "lpmabs/errors.hpp"
#include "lpmabs/text_io.hpp"

namespace lpmabs {

namespace {

using Rng = std::mt19937_64;

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

/// Random interleaving of `runs`, each run keeping its order; every step draws the next
/// run with probability proportional to its remaining length.
Word shuffle_merge(Rng& rng, const std::vector<Word>& runs) {
  std::vector<std::size_t> pos(runs.size(), 0);
  std::size_t remaining = 0;
  for (const auto& r : runs) remaining += r.size();
  Word out;
  while (remaining > 0) {
    auto k = pick(rng, remaining);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      auto left = runs[i].size() - pos[i];
      if (k < left) {
        out.push_back(runs[i][pos[i]++]);
        break;
      }
      k -= left;
    }
    --remaining;
  }
  return out;
}

constexpr std::size_t kMaxLoopIterations = 5;

void simulate(Rng& rng, const ProcessTree& t, Word& out) {
  switch (t.kind()) {
    case ProcessTree::Kind::activity:
      out.push_back(t.activity());
      return;
    case ProcessTree::Kind::tau:
      return;
    case ProcessTree::Kind::sequence:
      for (const auto& c : t.children()) simulate(rng, c, out);
      return;
    case ProcessTree::Kind::choice:
      simulate(rng, t.children()[pick(rng, t.children().size())], out);
      return;
    case ProcessTree::Kind::parallel: {
      std::vector<Word> runs;
      for (const auto& c : t.children()) {
        runs.emplace_back();
        simulate(rng, c, runs.back());
      }
      auto merged = shuffle_merge(rng, runs);
      out.insert(out.end(), merged.begin(), merged.end());
      return;
    }
    case ProcessTree::Kind::loop:
      simulate(rng, t.children()[0], out);
      for (std::size_t i = 0; i < kMaxLoopIterations && coin(rng, 0.5); ++i) {
        simulate(rng, t.children()[1], out);
        simulate(rng, t.children()[0], out);
      }
      return;
  }
}

double parse_fraction(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(value, &used);
    if (used == value.size() && value.front() != '-') return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("'" + key + "' expects a non-negative integer, got '" + value + "'");
}

}  // namespace

void GeneratorSpec::validate() const {
  if (patterns.empty()) throw ConfigError("generator needs at least one pattern");
  if (traces == 0) throw ConfigError("generator needs at least one trace");
  if (min_instances > max_instances) throw ConfigError("instance range is empty");
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("noise must lie in [0, 1)");
}

GeneratorSpec GeneratorSpec::from_key_values(const std::vector<std::pair<std::string, std::string>>& entries) {
  GeneratorSpec spec;
  for (const auto& [key, value] : entries) {
    if (key == "patterns") {
      spec.patterns.clear();
      for (const auto& p : split(value, ';'))
        if (!trim(p).empty()) spec.patterns.push_back(ProcessTree::parse(trim(p)));
    } else if (key == "traces") {
      spec.traces = parse_count(key, value);
    } else if (key == "instances") {
      auto dots = value.find("..");
      if (dots == std::string::npos) {
        spec.min_instances = spec.max_instances = parse_count(key, value);
      } else {
        spec.min_instances = parse_count(key, std::string(trim(value.substr(0, dots))));
        spec.max_instances = parse_count(key, std::string(trim(value.substr(dots + 2))));
      }
    } else if (key == "noise") {
      spec.noise = parse_fraction(key, value);
    } else if (key == "noise_activities") {
      spec.noise_activities.clear();
      spec.noise_from_patterns = trim(value) == "patterns";
      if (spec.noise_from_patterns) continue;
      for (const auto& a : split(value, ','))
        if (!trim(a).empty()) spec.noise_activities.emplace_back(std::string(trim(a)));
    } else if (key == "composition") {
      spec.composition = parse_composition(value);
    } else if (key == "seed") {
      spec.seed = parse_count(key, value);
    } else {
      throw ConfigError("unknown generator key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

EventLog generate_log(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Activity> noise_pool = spec.noise_activities;
  if (noise_pool.empty() && !spec.noise_from_patterns)
    noise_pool = {Activity("noise1"), Activity("noise2"), Activity("noise3")};
  if (spec.noise_from_patterns) {
    noise_pool.clear();
    ActivitySet all;
    for (const auto& p : spec.patterns) {
      auto acts = p.activities();
      all.insert(acts.begin(), acts.end());
    }
    noise_pool.assign(all.begin(), all.end());
  }

  using namespace std::chrono;
  const Timestamp epoch = sys_days{year{2020} / January / 1};
  std::vector<Trace> traces;
  for (std::size_t ti = 0; ti < spec.traces; ++ti) {
    std::vector<Word> runs;
    for (const auto& p : spec.patterns) {
      auto n = spec.min_instances + pick(rng, spec.max_instances - spec.min_instances + 1);
      for (std::size_t i = 0; i < n; ++i) {
        runs.emplace_back();
        simulate(rng, p, runs.back());
      }
    }
    Word clean;
    if (spec.composition == Composition::interleaving) {
      std::shuffle(runs.begin(), runs.end(), rng);
      for (const auto& r : runs) clean.insert(clean.end(), r.begin(), r.end());
    } else {
      clean = shuffle_merge(rng, runs);
    }
    // Per planted event, a geometric number of injected events (mean noise/(1-noise)),
    // so injected events make up a `noise` fraction in expectation; each lands in a
    // uniformly chosen gap of the trace.
    std::size_t injected = 0;
    for (std::size_t i = 0; i < clean.size(); ++i)
      while (!noise_pool.empty() && coin(rng, spec.noise)) ++injected;
    Word noisy = clean;
    for (std::size_t i = 0; i < injected; ++i) {
      auto at = static_cast<std::ptrdiff_t>(pick(rng, noisy.size() + 1));
      noisy.insert(noisy.begin() + at, noise_pool[pick(rng, noise_pool.size())]);
    }
    Trace t;
    t.case_id = "case_" + std::to_string(ti + 1);
    auto start = epoch + hours(24 * ti);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
      Event e(noisy[i], Lifecycle::complete);
      e.timestamp = start + minutes(i);
      t.events.push_back(std::move(e));
    }
    traces.push_back(std::move(t));
  }
  return EventLog(std::move(traces));
}

}  // namespace lpmabs
