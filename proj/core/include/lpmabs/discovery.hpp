#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/process_tree.hpp"

namespace lpmabs {

inline constexpr double kDefaultDiscoveryNoise = 0.2;

/// Directly-follows graph over complete-lifecycle events.
struct DirectlyFollowsGraph {
  std::map<Activity, std::size_t> nodes;  // activity -> occurrences
  std::map<std::pair<Activity, Activity>, std::size_t> edges;
  std::map<Activity, std::size_t> start_counts;
  std::map<Activity, std::size_t> end_counts;
  std::size_t empty_traces = 0;

  bool has_edge(const Activity& a, const Activity& b) const { return edges.contains({a, b}); }
  friend bool operator==(const DirectlyFollowsGraph&, const DirectlyFollowsGraph&) = default;
};

/// Builds the graph and removes every edge (a,b) with count < noise * (largest count
/// of an edge leaving a); start and end activities are filtered against the largest
/// start and end count. Throws ConfigError unless 0 <= noise < 1.
DirectlyFollowsGraph build_dfg(const EventLog& log, double noise = 0.0);
DirectlyFollowsGraph build_dfg(const std::map<Word, std::size_t>& variants, double noise = 0.0);

/// Inductive-style discovery. Per recursion step: empty traces (kept as an optional
/// skip unless rarer than `noise`), single-activity base cases, then the first
/// applicable cut among xor, sequence, parallel and loop, searched on the raw graph and
/// then on the filtered one. Without a cut the result is a flower model. The returned
/// tree is canonical. Throws ConfigError unless 0 <= noise < 1.
ProcessTree discover_model(const EventLog& log, double noise = kDefaultDiscoveryNoise);
ProcessTree discover_model(const std::map<Word, std::size_t>& variants, double noise = kDefaultDiscoveryNoise);

}  // namespace lpmabs
