#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpmabs/eventlog.hpp"

namespace lpmabs {

struct PlaceId {
  std::uint32_t index = 0;
  friend auto operator<=>(PlaceId, PlaceId) = default;
};

struct TransitionId {
  std::uint32_t index = 0;
  friend auto operator<=>(TransitionId, TransitionId) = default;
};

struct Transition {
  std::string name;
  std::optional<Activity> label;  // nullopt: silent (tau) transition
  std::vector<PlaceId> inputs;    // sorted, no duplicates
  std::vector<PlaceId> outputs;   // sorted, no duplicates

  bool silent() const noexcept { return !label.has_value(); }
};

/// Labeled Petri net with unweighted arcs. Places and transitions live in separate id
/// spaces, so they can never coincide.
class LabeledPetriNet {
 public:
  PlaceId add_place(std::string name);
  TransitionId add_transition(std::string name, std::optional<Activity> label = std::nullopt);
  /// Arcs form a set: adding an existing arc is a no-op. Unknown ids throw ContractViolation.
  void add_arc(PlaceId from, TransitionId to);
  void add_arc(TransitionId from, PlaceId to);

  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }

  const std::string& place_name(PlaceId p) const { return places_.at(p.index); }
  const Transition& transition(TransitionId t) const { return transitions_.at(t.index); }
  std::span<const Transition> transitions() const noexcept { return transitions_; }

  /// Transitions with `p` among their inputs / outputs.
  std::vector<TransitionId> consumers(PlaceId p) const;
  std::vector<TransitionId> producers(PlaceId p) const;

  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;

  /// Labels of all visible transitions.
  ActivitySet activities() const;

 private:
  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
};

/// Token counts per place of one net. Always sized to the net's place count.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::size_t places) : counts_(places, 0) {}
  Marking(std::size_t places, std::initializer_list<std::pair<PlaceId, std::uint32_t>> tokens);

  std::uint32_t operator[](PlaceId p) const { return counts_.at(p.index); }
  void set(PlaceId p, std::uint32_t n) { counts_.at(p.index) = n; }
  void add(PlaceId p, std::uint32_t n = 1) { counts_.at(p.index) += n; }

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return total() == 0; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  /// Places holding at least one token, ascending.
  std::vector<PlaceId> support() const;

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;

 private:
  std::vector<std::uint32_t> counts_;
};

/// Net plus initial and final marking.
struct AcceptingPetriNet {
  LabeledPetriNet net;
  Marking initial;
  Marking final_marking;

  AcceptingPetriNet() = default;
  /// Throws ContractViolation when a marking does not match the net's place count.
  AcceptingPetriNet(LabeledPetriNet n, Marking init, Marking fin);
};

inline constexpr std::size_t kDefaultStateLimit = 100'000;

std::vector<TransitionId> enabled(const LabeledPetriNet& net, const Marking& m);
inline std::vector<TransitionId> enabled(const AcceptingPetriNet& apn, const Marking& m) {
  return enabled(apn.net, m);
}
bool is_enabled(const LabeledPetriNet& net, const Marking& m, TransitionId t);

/// Throws ContractViolation when `t` is not enabled in `m`.
Marking fire(const LabeledPetriNet& net, const Marking& m, TransitionId t);
inline Marking fire(const AcceptingPetriNet& apn, const Marking& m, TransitionId t) {
  return fire(apn.net, m, t);
}

/// All markings reachable from `m` by firing silent transitions only (including `m`),
/// in breadth-first discovery order.
std::vector<Marking> tau_closure(const LabeledPetriNet& net, const Marking& m,
                                 std::size_t state_limit = kDefaultStateLimit);

/// True iff a firing sequence of at most `step_bound` transitions (unbounded when
/// nullopt) produces exactly `word` as its visible labels and ends in the final marking.
/// Throws SearchLimitExceeded when more than `state_limit` (marking, position) states
/// are discovered, and ContractViolation when `step_bound < word.size()`.
bool accepts(const AcceptingPetriNet& apn, std::span<const Activity> word,
             std::optional<std::size_t> step_bound = std::nullopt,
             std::size_t state_limit = kDefaultStateLimit);

/// Every accepted word of visible length at most `max_visible_len`.
std::set<Word> language_upto(const AcceptingPetriNet& apn, std::size_t max_visible_len,
                             std::size_t state_limit = kDefaultStateLimit);

/// Fewest visible transitions on any run from the initial to the final marking;
/// nullopt when the final marking is unreachable.
std::optional<std::size_t> shortest_run_length(const AcceptingPetriNet& apn,
                                               std::size_t state_limit = kDefaultStateLimit);

std::string to_string(const LabeledPetriNet& net, const Marking& m);

}  // namespace lpmabs

template <>
struct std::hash<lpmabs::Marking> {
  std::size_t operator()(const lpmabs::Marking& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto c : m.counts()) {
      h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
