#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/petri_net.hpp"
#include "lpmabs/process_tree.hpp"
#include "lpmabs/visible_automaton.hpp"

namespace lpmabs {

inline constexpr std::size_t kDefaultMaxLpmActivities = 5;

/// A small process model describing one frequent behavioural pattern of a log.
/// LPMs built by discovery carry their tree; patterns loaded from PNML only have a net.
struct LocalProcessModel {
  std::optional<ProcessTree> tree;
  AcceptingPetriNet net;
  ActivitySet activities;
  std::size_t support = 0;
  std::size_t rank = 0;  // 1-based position in a ranking, 0 when unranked

  /// Throws ContractViolation when activity leaves repeat or exceed `max_activities`.
  static LocalProcessModel from_tree(ProcessTree tree, std::size_t max_activities = kDefaultMaxLpmActivities);
  static LocalProcessModel from_net(AcceptingPetriNet net);

  /// Tree expression when available, otherwise a summary of the net's labels.
  std::string describe() const;
};

/// Half-open index range into the projected trace.
struct SegmentRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const SegmentRange&, const SegmentRange&) = default;
};

/// Projected trace split as lambda_1 gamma_1 ... lambda_n gamma_n lambda_{n+1}: every
/// gamma is a complete run of the model, lambdas hold the rest (possibly empty).
struct Segmentation {
  Word projected;
  /// Position in the original trace of every projected event.
  std::vector<std::size_t> source_index;
  std::vector<SegmentRange> lambdas;  // gammas.size() + 1 entries
  std::vector<SegmentRange> gammas;

  Word lambda(std::size_t i) const;
  Word gamma(std::size_t i) const;
  /// Concatenation of all gammas.
  Word gamma_events() const;
  std::size_t gamma_size() const noexcept;
};

/// Segments an already projected word. Among all segmentations maximizing the number
/// of events inside gammas, gammas start as early as possible and, at a fixed start,
/// extend as far as possible.
Segmentation segment_projected(std::span<const Activity> projected, VisibleAutomaton& automaton);

/// Most events coverable by gammas in `projected`; same value as
/// `segment_projected(...).gamma_size()` without building the segmentation.
std::size_t max_gamma_size(std::span<const Activity> projected, VisibleAutomaton& automaton);

Segmentation segment(const Trace& trace, const AcceptingPetriNet& net,
                     std::size_t state_limit = kDefaultStateLimit);
Segmentation segment(const Trace& trace, const LocalProcessModel& lpm,
                     std::size_t state_limit = kDefaultStateLimit);

/// Number of events in gamma segments summed over all traces (all lifecycles).
std::size_t support(const EventLog& log, const AcceptingPetriNet& net,
                    std::size_t state_limit = kDefaultStateLimit);
std::size_t support(const EventLog& log, const LocalProcessModel& lpm,
                    std::size_t state_limit = kDefaultStateLimit);

}  // namespace lpmabs
