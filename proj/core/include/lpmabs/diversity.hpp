#pragma once

#include <cstddef>
#include <vector>

#include "lpmabs/lpm.hpp"
#include "lpmabs/lpm_discovery.hpp"

namespace lpmabs {

/// |a ∩ b| / |a ∪ b|; 1 for two empty sets.
double jaccard(const ActivitySet& a, const ActivitySet& b);

/// Diversity of the i-th (1-based) model: 1 for i = 1, otherwise 1 minus the largest
/// Jaccard similarity of its activity set to any higher-ranked model.
/// Throws ContractViolation when i is 0 or beyond the ranking.
double diversity(const LpmRanking& ranking, std::size_t i);

enum class FilterOrder { topk_then_filter, filter_then_topk };

/// Drops every model whose diversity against the models retained before it is at most
/// `t_div`, keeping rank order. With topk_then_filter only the first k models are
/// considered; with filter_then_topk the first k survivors are returned.
std::vector<LocalProcessModel> filter_diverse(const LpmRanking& ranking, double t_div, std::size_t k,
                                              FilterOrder order = FilterOrder::topk_then_filter);

}  // namespace lpmabs
