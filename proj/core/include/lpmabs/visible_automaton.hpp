#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lpmabs/petri_net.hpp"

namespace lpmabs {

/// Subset construction over the visible labels of an accepting net, built lazily.
/// A state is the silent closure of the set of markings reachable after some word;
/// it accepts when that set contains the final marking. Transitions are cached, so
/// repeated replays of similar words (segmentation, support counting) stay cheap.
class VisibleAutomaton {
 public:
  using StateId = std::uint32_t;
  static constexpr StateId kDead = std::numeric_limits<StateId>::max();

  /// `state_limit` bounds the number of distinct markings explored overall.
  explicit VisibleAutomaton(const AcceptingPetriNet& apn, std::size_t state_limit = kDefaultStateLimit);

  StateId initial() const noexcept { return 0; }
  /// Successor on `label`; kDead when no marking in `state` can produce it.
  StateId step(StateId state, const Activity& label);
  bool accepting(StateId state) const { return state != kDead && accepting_[state]; }

  /// Convenience: replays `word` from the initial state.
  bool accepts(std::span<const Activity> word);

  std::size_t state_count() const noexcept { return sets_.size(); }

 private:
  using MarkingId = std::uint32_t;

  MarkingId intern(const Marking& m);
  StateId intern_set(std::vector<MarkingId> set);
  void close(std::vector<MarkingId>& set);

  const AcceptingPetriNet* apn_;
  std::size_t state_limit_;
  std::vector<Marking> markings_;
  std::unordered_map<Marking, MarkingId> marking_ids_;
  std::optional<MarkingId> final_id_;
  std::vector<std::vector<MarkingId>> sets_;
  std::map<std::vector<MarkingId>, StateId> set_ids_;
  std::vector<bool> accepting_;
  std::vector<std::unordered_map<Activity, StateId>> delta_;
};

}  // namespace lpmabs
