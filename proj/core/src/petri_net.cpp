#include "lpmabs/petri_net.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

void insert_sorted(std::vector<PlaceId>& v, PlaceId p) {
  auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) v.insert(it, p);
}

struct StateKey {
  Marking marking;
  std::size_t position;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    return std::hash<Marking>{}(k.marking) * 31 + k.position;
  }
};

struct WordStateKey {
  Marking marking;
  Word word;
  friend bool operator==(const WordStateKey&, const WordStateKey&) = default;
};

struct WordStateKeyHash {
  std::size_t operator()(const WordStateKey& k) const noexcept {
    std::size_t h = std::hash<Marking>{}(k.marking);
    for (const auto& a : k.word) h = h * 1099511628211ULL ^ std::hash<Activity>{}(a);
    return h;
  }
};

}  // namespace

PlaceId LabeledPetriNet::add_place(std::string name) {
  places_.push_back(std::move(name));
  return PlaceId{static_cast<std::uint32_t>(places_.size() - 1)};
}

TransitionId LabeledPetriNet::add_transition(std::string name, std::optional<Activity> label) {
  transitions_.push_back(Transition{std::move(name), std::move(label), {}, {}});
  return TransitionId{static_cast<std::uint32_t>(transitions_.size() - 1)};
}

void LabeledPetriNet::add_arc(PlaceId from, TransitionId to) {
  if (from.index >= places_.size() || to.index >= transitions_.size())
    throw ContractViolation("arc endpoint does not exist");
  insert_sorted(transitions_[to.index].inputs, from);
}

void LabeledPetriNet::add_arc(TransitionId from, PlaceId to) {
  if (to.index >= places_.size() || from.index >= transitions_.size())
    throw ContractViolation("arc endpoint does not exist");
  insert_sorted(transitions_[from.index].outputs, to);
}

std::vector<TransitionId> LabeledPetriNet::consumers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (std::uint32_t i = 0; i < transitions_.size(); ++i)
    if (std::binary_search(transitions_[i].inputs.begin(), transitions_[i].inputs.end(), p))
      out.push_back(TransitionId{i});
  return out;
}

std::vector<TransitionId> LabeledPetriNet::producers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (std::uint32_t i = 0; i < transitions_.size(); ++i)
    if (std::binary_search(transitions_[i].outputs.begin(), transitions_[i].outputs.end(), p))
      out.push_back(TransitionId{i});
  return out;
}

std::optional<PlaceId> LabeledPetriNet::find_place(std::string_view name) const {
  for (std::uint32_t i = 0; i < places_.size(); ++i)
    if (places_[i] == name) return PlaceId{i};
  return std::nullopt;
}

std::optional<TransitionId> LabeledPetriNet::find_transition(std::string_view name) const {
  for (std::uint32_t i = 0; i < transitions_.size(); ++i)
    if (transitions_[i].name == name) return TransitionId{i};
  return std::nullopt;
}

ActivitySet LabeledPetriNet::activities() const {
  ActivitySet out;
  for (const auto& t : transitions_)
    if (t.label) out.insert(*t.label);
  return out;
}

Marking::Marking(std::size_t places, std::initializer_list<std::pair<PlaceId, std::uint32_t>> tokens)
    : counts_(places, 0) {
  for (auto [p, n] : tokens) counts_.at(p.index) += n;
}

std::uint64_t Marking::total() const noexcept {
  std::uint64_t n = 0;
  for (auto c : counts_) n += c;
  return n;
}

std::vector<PlaceId> Marking::support() const {
  std::vector<PlaceId> out;
  for (std::uint32_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] > 0) out.push_back(PlaceId{i});
  return out;
}

AcceptingPetriNet::AcceptingPetriNet(LabeledPetriNet n, Marking init, Marking fin)
    : net(std::move(n)), initial(std::move(init)), final_marking(std::move(fin)) {
  if (initial.size() != net.place_count() || final_marking.size() != net.place_count())
    throw ContractViolation("marking does not match the net's places");
}

bool is_enabled(const LabeledPetriNet& net, const Marking& m, TransitionId t) {
  for (auto p : net.transition(t).inputs)
    if (m[p] == 0) return false;
  return true;
}

std::vector<TransitionId> enabled(const LabeledPetriNet& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (std::uint32_t i = 0; i < net.transition_count(); ++i)
    if (is_enabled(net, m, TransitionId{i})) out.push_back(TransitionId{i});
  return out;
}

Marking fire(const LabeledPetriNet& net, const Marking& m, TransitionId t) {
  if (t.index >= net.transition_count()) throw ContractViolation("unknown transition");
  if (!is_enabled(net, m, t))
    throw ContractViolation("transition '" + net.transition(t).name + "' is not enabled");
  Marking next = m;
  const auto& tr = net.transition(t);
  for (auto p : tr.inputs) next.set(p, next[p] - 1);
  for (auto p : tr.outputs) next.add(p);
  return next;
}

std::vector<Marking> tau_closure(const LabeledPetriNet& net, const Marking& m, std::size_t state_limit) {
  std::vector<Marking> order{m};
  std::unordered_set<Marking> seen{m};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto t : enabled(net, order[i])) {
      if (!net.transition(t).silent()) continue;
      auto next = fire(net, order[i], t);
      if (seen.insert(next).second) {
        if (seen.size() > state_limit) throw SearchLimitExceeded("tau closure", state_limit);
        order.push_back(std::move(next));
      }
    }
  }
  return order;
}

bool accepts(const AcceptingPetriNet& apn, std::span<const Activity> word,
             std::optional<std::size_t> step_bound, std::size_t state_limit) {
  if (step_bound && *step_bound < word.size())
    throw ContractViolation("step bound is smaller than the word length");
  const auto& net = apn.net;
  std::unordered_set<StateKey, StateKeyHash> seen;
  std::deque<std::pair<StateKey, std::size_t>> queue;  // state, steps taken
  StateKey start{apn.initial, 0};
  seen.insert(start);
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    auto [state, steps] = std::move(queue.front());
    queue.pop_front();
    if (state.position == word.size() && state.marking == apn.final_marking) return true;
    if (step_bound && steps >= *step_bound) continue;
    if (step_bound && word.size() - state.position > *step_bound - steps) continue;
    for (auto t : enabled(net, state.marking)) {
      const auto& tr = net.transition(t);
      std::size_t next_pos = state.position;
      if (!tr.silent()) {
        if (state.position == word.size() || *tr.label != word[state.position]) continue;
        ++next_pos;
      }
      StateKey next{fire(net, state.marking, t), next_pos};
      if (seen.insert(next).second) {
        if (seen.size() > state_limit) throw SearchLimitExceeded("acceptance check", state_limit);
        queue.emplace_back(std::move(next), steps + 1);
      }
    }
  }
  return false;
}

std::set<Word> language_upto(const AcceptingPetriNet& apn, std::size_t max_visible_len,
                             std::size_t state_limit) {
  const auto& net = apn.net;
  std::set<Word> language;
  std::unordered_set<WordStateKey, WordStateKeyHash> seen;
  std::deque<WordStateKey> queue;
  seen.insert({apn.initial, {}});
  queue.push_back({apn.initial, {}});
  while (!queue.empty()) {
    auto state = std::move(queue.front());
    queue.pop_front();
    if (state.marking == apn.final_marking) language.insert(state.word);
    for (auto t : enabled(net, state.marking)) {
      const auto& tr = net.transition(t);
      WordStateKey next{fire(net, state.marking, t), state.word};
      if (!tr.silent()) {
        if (state.word.size() == max_visible_len) continue;
        next.word.push_back(*tr.label);
      }
      if (seen.insert(next).second) {
        if (seen.size() > state_limit) throw SearchLimitExceeded("language enumeration", state_limit);
        queue.push_back(std::move(next));
      }
    }
  }
  return language;
}

std::optional<std::size_t> shortest_run_length(const AcceptingPetriNet& apn, std::size_t state_limit) {
  const auto& net = apn.net;
  std::unordered_map<Marking, std::size_t> dist;
  std::deque<Marking> queue;
  dist.emplace(apn.initial, 0);
  queue.push_back(apn.initial);
  // 0-1 BFS: silent firings cost nothing, visible ones cost one.
  while (!queue.empty()) {
    auto m = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = dist.at(m);
    if (m == apn.final_marking) return d;
    for (auto t : enabled(net, m)) {
      const bool silent = net.transition(t).silent();
      auto next = fire(net, m, t);
      const std::size_t nd = d + (silent ? 0 : 1);
      auto it = dist.find(next);
      if (it != dist.end() && it->second <= nd) continue;
      if (it == dist.end() && dist.size() >= state_limit)
        throw SearchLimitExceeded("shortest run search", state_limit);
      dist[next] = nd;
      if (silent) queue.push_front(std::move(next));
      else queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

std::string to_string(const LabeledPetriNet& net, const Marking& m) {
  std::string s = "{";
  bool first = true;
  for (auto p : m.support()) {
    if (!first) s += ", ";
    first = false;
    s += net.place_name(p) + ":" + std::to_string(m[p]);
  }
  return s + "}";
}

}  // namespace lpmabs
