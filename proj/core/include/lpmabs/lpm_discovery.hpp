#pragma once

#include <cstddef>
#include <vector>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/lpm.hpp"

namespace lpmabs {

/// LPMs ordered by descending support. Ties: fewer activities, fewer tree nodes,
/// smaller bounded language, then the canonical tree expression.
struct LpmRanking {
  std::vector<LocalProcessModel> models;

  std::size_t size() const noexcept { return models.size(); }
  bool empty() const noexcept { return models.empty(); }
  /// 1-based access, matching the rank numbers stored in the models.
  const LocalProcessModel& at_rank(std::size_t i) const;
};

struct LpmSearchParams {
  std::size_t max_activities = kDefaultMaxLpmActivities;
  std::size_t beam_width = 50;
  std::size_t min_support = 2;
  std::size_t max_results = 100;
  /// Keep every candidate of every size (ignores beam_width).
  bool exhaustive = false;
  std::size_t state_limit = kDefaultStateLimit;
};

/// Beam search over process trees. Starts from one leaf per activity occurring at
/// least `min_support` times; each round replaces one activity leaf x of a kept tree
/// by op(x, y) or op(y, x), op in {seq, xor, and, loop}, y a frequent activity not yet
/// in the tree. Candidates are canonicalized and deduplicated, scored by support and
/// the best `beam_width` of each size are expanded further.
///
/// A tree with two or more activities is only admitted when each of its runs spans at
/// least two events: otherwise an exclusive choice over the most frequent activities
/// would win every ranking by support alone while describing no behaviour.
///
/// Throws ConfigError on an empty log or `max_activities == 0`.
LpmRanking discover_lpms(const EventLog& log, const LpmSearchParams& params = {});

/// Strict weak order used by the ranking (true when `a` ranks before `b`).
bool ranks_before(const LocalProcessModel& a, const LocalProcessModel& b);

/// Number of accepted words of length at most |activities| + 1.
std::size_t bounded_language_size(const LocalProcessModel& lpm);

}  // namespace lpmabs
