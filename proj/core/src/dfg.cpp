#include "lpmabs/discovery.hpp"

#include <algorithm>

#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

void check_noise(double noise) {
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("noise must lie in [0, 1)");
}

template <typename Map, typename Key>
void filter_relative(Map& counts, double noise, Key key_of) {
  if (noise <= 0.0) return;
  std::map<decltype(key_of(counts.begin()->first)), std::size_t> max_of;
  for (const auto& [k, c] : counts) {
    auto& m = max_of[key_of(k)];
    m = std::max(m, c);
  }
  std::erase_if(counts, [&](const auto& kv) {
    return static_cast<double>(kv.second) < noise * static_cast<double>(max_of[key_of(kv.first)]);
  });
}

}  // namespace

DirectlyFollowsGraph build_dfg(const std::map<Word, std::size_t>& variants, double noise) {
  check_noise(noise);
  DirectlyFollowsGraph g;
  for (const auto& [word, n] : variants) {
    if (word.empty()) {
      g.empty_traces += n;
      continue;
    }
    g.start_counts[word.front()] += n;
    g.end_counts[word.back()] += n;
    for (std::size_t i = 0; i < word.size(); ++i) {
      g.nodes[word[i]] += n;
      if (i + 1 < word.size()) g.edges[{word[i], word[i + 1]}] += n;
    }
  }
  if (g.edges.empty() && g.start_counts.empty()) return g;
  if (!g.edges.empty())
    filter_relative(g.edges, noise, [](const std::pair<Activity, Activity>& e) { return e.first; });
  filter_relative(g.start_counts, noise, [](const Activity&) { return 0; });
  filter_relative(g.end_counts, noise, [](const Activity&) { return 0; });
  return g;
}

DirectlyFollowsGraph build_dfg(const EventLog& log, double noise) {
  return build_dfg(log.complete_variants(), noise);
}

}  // namespace lpmabs
