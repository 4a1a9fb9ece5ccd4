#include "lpmabs/alignment.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

struct StateKey {
  std::uint32_t marking;
  std::uint32_t pos;
  friend bool operator==(StateKey, StateKey) = default;
};

struct StateKeyHash {
  std::size_t operator()(StateKey k) const noexcept {
    return (static_cast<std::size_t>(k.marking) << 32) ^ k.pos;
  }
};

struct Node {
  StateKey key;
  std::size_t cost;
  std::size_t model_moves;
  std::uint32_t parent;
  AlignmentMove move;
  bool closed = false;
};

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct QueueEntry {
  std::size_t f;
  std::size_t model_moves;
  std::uint64_t seq;
  std::uint32_t node;

  bool operator>(const QueueEntry& o) const {
    return std::tie(f, model_moves, seq) > std::tie(o.f, o.model_moves, o.seq);
  }
};

}  // namespace

std::optional<Alignment> align(const AcceptingPetriNet& apn, std::span<const Activity> trace,
                               const AlignmentOptions& options) {
  const auto& net = apn.net;
  const auto alphabet = net.activities();
  const auto log_cost = options.costs.log_move;
  const auto model_cost = options.costs.model_move;

  // Events whose label no transition carries can only be log moves: an admissible
  // and consistent heuristic.
  std::vector<std::size_t> foreign_suffix(trace.size() + 1, 0);
  for (std::size_t i = trace.size(); i-- > 0;)
    foreign_suffix[i] = foreign_suffix[i + 1] + (alphabet.contains(trace[i]) ? 0 : log_cost);

  std::vector<Marking> markings;
  std::unordered_map<Marking, std::uint32_t> marking_ids;
  auto intern = [&](Marking m) {
    auto [it, inserted] = marking_ids.emplace(m, static_cast<std::uint32_t>(markings.size()));
    if (inserted) markings.push_back(std::move(m));
    return it->second;
  };

  std::vector<Node> nodes;
  std::unordered_map<StateKey, std::uint32_t, StateKeyHash> best;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
  std::uint64_t seq = 0;

  auto push = [&](StateKey key, std::size_t cost, std::size_t mm, std::uint32_t parent, AlignmentMove move) {
    auto it = best.find(key);
    if (it != best.end()) {
      auto& existing = nodes[it->second];
      if (existing.closed || std::tie(existing.cost, existing.model_moves) <= std::tie(cost, mm)) return;
    }
    if (it == best.end() && best.size() >= options.state_limit)
      throw SearchLimitExceeded("alignment search exceeded the state limit", options.state_limit);
    auto id = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back({key, cost, mm, parent, move});
    best[key] = id;
    open.push({cost + foreign_suffix[key.pos], mm, seq++, id});
  };

  const auto final_id = intern(apn.final_marking);
  push({intern(apn.initial), 0}, 0, 0, kNoParent, {AlignmentMove::Kind::model_move_tau, std::nullopt, std::nullopt});

  std::size_t expanded = 0;
  while (!open.empty()) {
    auto entry = open.top();
    open.pop();
    auto& node = nodes[entry.node];
    if (node.closed || best.at(node.key) != entry.node) continue;
    node.closed = true;
    ++expanded;
    const auto key = node.key;
    const auto cost = node.cost;
    const auto mm = node.model_moves;

    if (key.pos == trace.size() && key.marking == final_id) {
      Alignment result;
      result.cost = cost;
      result.model_moves = mm;
      result.expanded = expanded;
      for (auto id = entry.node; nodes[id].parent != kNoParent; id = nodes[id].parent)
        result.moves.push_back(nodes[id].move);
      std::reverse(result.moves.begin(), result.moves.end());
      for (const auto& mv : result.moves)
        if (mv.kind == AlignmentMove::Kind::log_move) ++result.log_moves;
      return result;
    }

    const Marking m = markings[key.marking];
    const auto en = enabled(net, m);
    const Activity* current = key.pos < trace.size() ? &trace[key.pos] : nullptr;

    if (current) {
      for (auto t : en) {
        const auto& tr = net.transition(t);
        if (tr.label && *tr.label == *current)
          push({intern(fire(net, m, t)), key.pos + 1}, cost, mm, entry.node,
               {AlignmentMove::Kind::synchronous, key.pos, t});
      }
    }
    for (auto t : en)
      if (net.transition(t).silent())
        push({intern(fire(net, m, t)), key.pos}, cost, mm, entry.node,
             {AlignmentMove::Kind::model_move_tau, std::nullopt, t});
    if (current && !(options.forbid_log_move && options.forbid_log_move(m, *current)))
      push({key.marking, key.pos + 1}, cost + log_cost, mm, entry.node,
           {AlignmentMove::Kind::log_move, key.pos, std::nullopt});
    for (auto t : en)
      if (!net.transition(t).silent())
        push({intern(fire(net, m, t)), key.pos}, cost + model_cost, mm + 1, entry.node,
             {AlignmentMove::Kind::model_move_visible, std::nullopt, t});
  }
  return std::nullopt;
}

}  // namespace lpmabs
