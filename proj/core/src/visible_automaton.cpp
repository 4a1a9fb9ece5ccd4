#include "lpmabs/visible_automaton.hpp"

#include <algorithm>

#include "lpmabs/errors.hpp"

namespace lpmabs {

VisibleAutomaton::VisibleAutomaton(const AcceptingPetriNet& apn, std::size_t state_limit)
    : apn_(&apn), state_limit_(state_limit) {
  std::vector<MarkingId> start{intern(apn.initial)};
  close(start);
  intern_set(std::move(start));
}

VisibleAutomaton::MarkingId VisibleAutomaton::intern(const Marking& m) {
  auto [it, inserted] = marking_ids_.try_emplace(m, static_cast<MarkingId>(markings_.size()));
  if (inserted) {
    if (markings_.size() >= state_limit_) throw SearchLimitExceeded("visible automaton", state_limit_);
    markings_.push_back(m);
    if (m == apn_->final_marking) final_id_ = it->second;
  }
  return it->second;
}

void VisibleAutomaton::close(std::vector<MarkingId>& set) {
  std::vector<bool> in_set;
  auto mark = [&](MarkingId id) {
    if (id >= in_set.size()) in_set.resize(id + 1, false);
    bool fresh = !in_set[id];
    in_set[id] = true;
    return fresh;
  };
  for (auto id : set) mark(id);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Marking current = markings_[set[i]];
    for (auto t : enabled(apn_->net, current)) {
      if (!apn_->net.transition(t).silent()) continue;
      auto id = intern(fire(apn_->net, current, t));
      if (mark(id)) set.push_back(id);
    }
  }
  std::sort(set.begin(), set.end());
}

VisibleAutomaton::StateId VisibleAutomaton::intern_set(std::vector<MarkingId> set) {
  auto it = set_ids_.find(set);
  if (it != set_ids_.end()) return it->second;
  const auto id = static_cast<StateId>(sets_.size());
  const bool acc = final_id_ && std::binary_search(set.begin(), set.end(), *final_id_);
  set_ids_.emplace(set, id);
  sets_.push_back(std::move(set));
  accepting_.push_back(acc);
  delta_.emplace_back();
  return id;
}

VisibleAutomaton::StateId VisibleAutomaton::step(StateId state, const Activity& label) {
  if (state == kDead) return kDead;
  if (auto it = delta_[state].find(label); it != delta_[state].end()) return it->second;

  std::vector<MarkingId> next;
  std::vector<bool> in_next;
  const auto source = sets_[state];
  for (auto mid : source) {
    const Marking current = markings_[mid];
    for (auto t : enabled(apn_->net, current)) {
      const auto& tr = apn_->net.transition(t);
      if (tr.silent() || *tr.label != label) continue;
      auto id = intern(fire(apn_->net, current, t));
      if (id >= in_next.size()) in_next.resize(id + 1, false);
      if (!in_next[id]) {
        in_next[id] = true;
        next.push_back(id);
      }
    }
  }
  StateId result = kDead;
  if (!next.empty()) {
    close(next);
    result = intern_set(std::move(next));
  }
  delta_[state].emplace(label, result);
  return result;
}

bool VisibleAutomaton::accepts(std::span<const Activity> word) {
  StateId s = initial();
  for (const auto& a : word) {
    s = step(s, a);
    if (s == kDead) return false;
  }
  return accepting(s);
}

}  // namespace lpmabs
