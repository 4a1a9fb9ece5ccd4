#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lpmabs/abstraction.hpp"
#include "lpmabs/eventlog.hpp"
#include "lpmabs/process_tree.hpp"

namespace lpmabs {

/// Parameters of a synthetic log with planted patterns.
///
/// Key/value form (all keys optional except `patterns`):
///   patterns = seq(a,b,c); and(d,e)
///   traces = 200
///   instances = 1..3          (or a single number)
///   noise = 0.3
///   noise_activities = x,y    (or `patterns`; default: noise1,noise2,noise3)
///   composition = interleaving | parallel
///   seed = 7
struct GeneratorSpec {
  std::vector<ProcessTree> patterns;
  std::size_t traces = 100;
  std::size_t min_instances = 1;
  std::size_t max_instances = 1;
  /// Expected fraction of injected events among all events, in [0, 1).
  double noise = 0.0;
  /// Labels of injected events; empty means noise1, noise2, noise3.
  std::vector<Activity> noise_activities;
  /// Draw injected events from the pattern activities instead.
  bool noise_from_patterns = false;
  Composition composition = Composition::interleaving;
  std::uint64_t seed = 1;

  /// Throws ConfigError on unknown keys or out-of-range values and ParseError on bad
  /// pattern expressions.
  static GeneratorSpec from_key_values(const std::vector<std::pair<std::string, std::string>>& entries);
  void validate() const;
};

/// Every trace holds, per pattern, a uniform number of instances in
/// [min_instances, max_instances], each a random run of the pattern. With interleaving
/// the instances are concatenated in random order; with parallel they are randomly
/// merged, keeping each run's order. Every planted event draws a geometric number of
/// injected events (a coin with bias `noise` is flipped until it fails), which are placed
/// at uniformly random positions. Deterministic for a given seed.
EventLog generate_log(const GeneratorSpec& spec);

}  // namespace lpmabs
