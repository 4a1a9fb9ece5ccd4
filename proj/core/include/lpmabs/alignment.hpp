#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/petri_net.hpp"

namespace lpmabs {

struct AlignmentMove {
  enum class Kind { synchronous, log_move, model_move_visible, model_move_tau };

  Kind kind;
  std::optional<std::size_t> log_index;
  std::optional<TransitionId> transition;

  friend bool operator==(const AlignmentMove&, const AlignmentMove&) = default;
};

struct AlignmentCosts {
  std::uint32_t log_move = 1;
  std::uint32_t model_move = 1;
};

/// Returns true when a log move of `activity` is not allowed in marking `m`.
using LogMoveGuard = std::function<bool(const Marking& m, const Activity& activity)>;

struct AlignmentOptions {
  AlignmentCosts costs;
  std::size_t state_limit = kDefaultStateLimit;
  LogMoveGuard forbid_log_move;
};

struct Alignment {
  std::vector<AlignmentMove> moves;
  std::size_t cost = 0;
  /// Model moves on visible transitions.
  std::size_t model_moves = 0;
  std::size_t log_moves = 0;
  /// Search nodes expanded.
  std::size_t expanded = 0;
};

/// Minimum-cost alignment of `trace` against `apn` by A* over the synchronous product.
///
/// Costs compare lexicographically as (total cost, visible model moves), so among
/// cost-optimal alignments the one with the fewest model moves wins. Remaining ties are
/// broken by discovery order, successors being generated as synchronous, silent, log and
/// visible model moves, each in transition-id order.
///
/// Returns nullopt when no alignment reaches the final marking. Throws
/// SearchLimitExceeded when more than `state_limit` product states are discovered.
std::optional<Alignment> align(const AcceptingPetriNet& apn, std::span<const Activity> trace,
                               const AlignmentOptions& options = {});

}  // namespace lpmabs
