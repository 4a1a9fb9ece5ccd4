#include "lpmabs/diversity.hpp"

#include <algorithm>

#include "lpmabs/errors.hpp"

namespace lpmabs {

double jaccard(const ActivitySet& a, const ActivitySet& b) {
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x) ? 1 : 0;
  const std::size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double diversity(const LpmRanking& ranking, std::size_t i) {
  if (i == 0 || i > ranking.size())
    throw ContractViolation("diversity index " + std::to_string(i) + " outside ranking of size " +
                            std::to_string(ranking.size()));
  if (i == 1) return 1.0;
  double max_sim = 0.0;
  const auto& acts = ranking.models[i - 1].activities;
  for (std::size_t j = 0; j + 1 < i; ++j) max_sim = std::max(max_sim, jaccard(acts, ranking.models[j].activities));
  return 1.0 - max_sim;
}

std::vector<LocalProcessModel> filter_diverse(const LpmRanking& ranking, double t_div, std::size_t k,
                                              FilterOrder order) {
  if (t_div < 0.0 || t_div > 1.0) throw ConfigError("diversity threshold must lie in [0, 1]");
  const std::size_t limit = order == FilterOrder::topk_then_filter ? std::min(k, ranking.size()) : ranking.size();
  std::vector<LocalProcessModel> kept;
  for (std::size_t i = 0; i < limit; ++i) {
    if (order == FilterOrder::filter_then_topk && kept.size() == k) break;
    const auto& candidate = ranking.models[i];
    double max_sim = 0.0;
    for (const auto& r : kept) max_sim = std::max(max_sim, jaccard(candidate.activities, r.activities));
    // With nothing retained yet max_sim stays 0, so the diversity is 1.
    const double div = 1.0 - max_sim;
    if (div > t_div) kept.push_back(candidate);
  }
  return kept;
}

}  // namespace lpmabs
