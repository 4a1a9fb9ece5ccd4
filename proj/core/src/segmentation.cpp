#include "lpmabs/lpm.hpp"

#include <algorithm>
#include <map>

#include "lpmabs/errors.hpp"

namespace lpmabs {

LocalProcessModel LocalProcessModel::from_tree(ProcessTree tree, std::size_t max_activities) {
  auto leaves = tree.activity_leaves();
  ActivitySet acts(leaves.begin(), leaves.end());
  if (acts.size() != leaves.size())
    throw ContractViolation("LPM tree repeats an activity: " + tree.to_string());
  if (acts.size() > max_activities)
    throw ContractViolation("LPM tree has more than " + std::to_string(max_activities) + " activities");
  LocalProcessModel lpm{.tree = std::nullopt, .net = tree_to_net(tree), .activities = std::move(acts)};
  lpm.tree = std::move(tree);
  return lpm;
}

LocalProcessModel LocalProcessModel::from_net(AcceptingPetriNet net) {
  auto acts = net.net.activities();
  return LocalProcessModel{.tree = std::nullopt, .net = std::move(net), .activities = std::move(acts)};
}

std::string LocalProcessModel::describe() const {
  if (tree) return tree->to_string();
  std::string s = "net{";
  bool first = true;
  for (const auto& a : activities) {
    if (!first) s += ",";
    first = false;
    s += a.label();
  }
  return s + "}";
}

Word Segmentation::lambda(std::size_t i) const {
  const auto& r = lambdas.at(i);
  return Word(projected.begin() + static_cast<std::ptrdiff_t>(r.begin),
              projected.begin() + static_cast<std::ptrdiff_t>(r.end));
}

Word Segmentation::gamma(std::size_t i) const {
  const auto& r = gammas.at(i);
  return Word(projected.begin() + static_cast<std::ptrdiff_t>(r.begin),
              projected.begin() + static_cast<std::ptrdiff_t>(r.end));
}

Word Segmentation::gamma_events() const {
  Word out;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    auto g = gamma(i);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::size_t Segmentation::gamma_size() const noexcept {
  std::size_t n = 0;
  for (const auto& g : gammas) n += g.size();
  return n;
}

namespace {

/// For every start i, the ends j > i such that projected[i, j) is accepted, ascending.
std::vector<std::vector<std::size_t>> accepted_ends(std::span<const Activity> projected,
                                                    VisibleAutomaton& automaton) {
  const std::size_t n = projected.size();
  std::vector<std::vector<std::size_t>> ends(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto state = automaton.initial();
    for (std::size_t j = i; j < n; ++j) {
      state = automaton.step(state, projected[j]);
      if (state == VisibleAutomaton::kDead) break;
      if (automaton.accepting(state)) ends[i].push_back(j + 1);
    }
  }
  return ends;
}

/// best[i]: most gamma events achievable within projected[i, n).
std::vector<std::size_t> suffix_optimum(const std::vector<std::vector<std::size_t>>& ends) {
  const std::size_t n = ends.size();
  std::vector<std::size_t> best(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    best[i] = best[i + 1];
    for (auto j : ends[i]) best[i] = std::max(best[i], (j - i) + best[j]);
  }
  return best;
}

}  // namespace

std::size_t max_gamma_size(std::span<const Activity> projected, VisibleAutomaton& automaton) {
  return suffix_optimum(accepted_ends(projected, automaton)).front();
}

Segmentation segment_projected(std::span<const Activity> projected, VisibleAutomaton& automaton) {
  const auto ends = accepted_ends(projected, automaton);
  const auto best = suffix_optimum(ends);
  const std::size_t n = projected.size();

  Segmentation seg;
  seg.projected.assign(projected.begin(), projected.end());
  std::size_t lambda_start = 0;
  std::size_t i = 0;
  while (i < n) {
    std::optional<std::size_t> chosen;
    for (auto it = ends[i].rbegin(); it != ends[i].rend(); ++it) {
      if ((*it - i) + best[*it] == best[i]) {
        chosen = *it;
        break;
      }
    }
    if (chosen) {
      seg.lambdas.push_back({lambda_start, i});
      seg.gammas.push_back({i, *chosen});
      i = *chosen;
      lambda_start = i;
    } else {
      ++i;
    }
  }
  seg.lambdas.push_back({lambda_start, n});
  return seg;
}

Segmentation segment(const Trace& trace, const AcceptingPetriNet& net, std::size_t state_limit) {
  const auto alphabet = net.net.activities();
  Word projected;
  std::vector<std::size_t> source;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (alphabet.contains(trace.events[i].activity)) {
      projected.push_back(trace.events[i].activity);
      source.push_back(i);
    }
  }
  VisibleAutomaton automaton(net, state_limit);
  auto seg = segment_projected(projected, automaton);
  seg.source_index = std::move(source);
  return seg;
}

Segmentation segment(const Trace& trace, const LocalProcessModel& lpm, std::size_t state_limit) {
  return segment(trace, lpm.net, state_limit);
}

std::size_t support(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit) {
  const auto alphabet = net.net.activities();
  std::map<Word, std::size_t> projected;
  for (const auto& [word, count] : log.variants()) projected[project(word, alphabet)] += count;
  VisibleAutomaton automaton(net, state_limit);
  std::size_t total = 0;
  for (const auto& [word, count] : projected) {
    if (word.empty()) continue;
    total += count * max_gamma_size(word, automaton);
  }
  return total;
}

std::size_t support(const EventLog& log, const LocalProcessModel& lpm, std::size_t state_limit) {
  return support(log, lpm.net, state_limit);
}

}  // namespace lpmabs
