#include "lpmabs/lpm_discovery.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "lpmabs/errors.hpp"

namespace lpmabs {

const LocalProcessModel& LpmRanking::at_rank(std::size_t i) const {
  if (i == 0 || i > models.size()) throw ContractViolation("rank out of range");
  return models[i - 1];
}

std::size_t bounded_language_size(const LocalProcessModel& lpm) {
  try {
    return language_upto(lpm.net, lpm.activities.size() + 1).size();
  } catch (const SearchLimitExceeded&) {
    return std::numeric_limits<std::size_t>::max();
  }
}

namespace {

struct Candidate {
  LocalProcessModel lpm;
  std::string key;
  mutable std::optional<std::size_t> breadth;

  std::size_t language_breadth() const {
    if (!breadth) breadth = bounded_language_size(lpm);
    return *breadth;
  }
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.lpm.support != b.lpm.support) return a.lpm.support > b.lpm.support;
  if (a.lpm.activities.size() != b.lpm.activities.size())
    return a.lpm.activities.size() < b.lpm.activities.size();
  const auto na = a.lpm.tree ? a.lpm.tree->node_count() : 0;
  const auto nb = b.lpm.tree ? b.lpm.tree->node_count() : 0;
  if (na != nb) return na < nb;
  if (a.key == b.key) return false;
  const auto ba = a.language_breadth();
  const auto bb = b.language_breadth();
  if (ba != bb) return ba < bb;
  return a.key < b.key;
}

ProcessTree replace_leaf(const ProcessTree& node, std::size_t& counter, std::size_t target,
                         const ProcessTree& replacement) {
  if (node.kind() == ProcessTree::Kind::activity) {
    return counter++ == target ? replacement : node;
  }
  if (node.is_leaf()) return node;
  std::vector<ProcessTree> kids;
  for (const auto& c : node.children()) kids.push_back(replace_leaf(c, counter, target, replacement));
  return ProcessTree::make(node.kind(), std::move(kids));
}

class Scorer {
 public:
  Scorer(const EventLog& log, std::size_t state_limit) : state_limit_(state_limit) {
    for (auto& [word, count] : log.variants()) variants_.emplace_back(word, count);
  }

  std::size_t score(const AcceptingPetriNet& net) const {
    const auto alphabet = net.net.activities();
    std::map<Word, std::size_t> projected;
    for (const auto& [word, count] : variants_) {
      auto p = project(word, alphabet);
      if (!p.empty()) projected[std::move(p)] += count;
    }
    VisibleAutomaton automaton(net, state_limit_);
    std::size_t total = 0;
    for (const auto& [word, count] : projected) total += count * max_gamma_size(word, automaton);
    return total;
  }

 private:
  std::vector<std::pair<Word, std::size_t>> variants_;
  std::size_t state_limit_;
};

}  // namespace

bool ranks_before(const LocalProcessModel& a, const LocalProcessModel& b) {
  Candidate ca{a, a.tree ? a.tree->canonical().to_string() : a.describe(), std::nullopt};
  Candidate cb{b, b.tree ? b.tree->canonical().to_string() : b.describe(), std::nullopt};
  return candidate_before(ca, cb);
}

LpmRanking discover_lpms(const EventLog& log, const LpmSearchParams& params) {
  if (log.empty() || log.event_count() == 0) throw ConfigError("LPM discovery needs a non-empty log");
  if (params.max_activities == 0) throw ConfigError("max_activities must be at least 1");

  std::map<Activity, std::size_t> frequency;
  for (const auto& t : log.traces())
    for (const auto& e : t.events) ++frequency[e.activity];
  std::vector<Activity> frequent;
  for (const auto& [a, n] : frequency)
    if (n >= params.min_support) frequent.push_back(a);

  Scorer scorer(log, params.state_limit);
  std::vector<Candidate> all;
  std::unordered_set<std::string> seen;

  auto admit = [&](ProcessTree tree) -> std::optional<Candidate> {
    tree = tree.canonical();
    auto key = tree.to_string();
    if (!seen.insert(key).second) return std::nullopt;
    auto lpm = LocalProcessModel::from_tree(std::move(tree), params.max_activities);
    if (lpm.activities.size() >= 2) {
      auto shortest = shortest_run_length(lpm.net, params.state_limit);
      if (!shortest || *shortest < 2) return std::nullopt;
    }
    lpm.support = scorer.score(lpm.net);
    if (lpm.support < params.min_support || lpm.support == 0) return std::nullopt;
    return Candidate{std::move(lpm), std::move(key), std::nullopt};
  };

  auto keep_best = [&](std::vector<Candidate> level) {
    std::sort(level.begin(), level.end(), candidate_before);
    if (!params.exhaustive && level.size() > params.beam_width) level.resize(params.beam_width);
    return level;
  };

  std::vector<Candidate> frontier;
  for (const auto& a : frequent) {
    if (auto c = admit(ProcessTree::leaf(a))) {
      all.push_back(*c);
      frontier.push_back(std::move(*c));
    }
  }
  frontier = keep_best(std::move(frontier));

  static constexpr ProcessTree::Kind kOperators[] = {ProcessTree::Kind::sequence, ProcessTree::Kind::choice,
                                                     ProcessTree::Kind::parallel, ProcessTree::Kind::loop};
  for (std::size_t size = 1; size < params.max_activities && !frontier.empty(); ++size) {
    std::vector<Candidate> next;
    for (const auto& parent : frontier) {
      const auto& tree = *parent.lpm.tree;
      const auto leaves = tree.activity_leaves();
      for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
        for (const auto& y : frequent) {
          if (parent.lpm.activities.contains(y)) continue;
          const auto x_leaf = ProcessTree::leaf(leaves[leaf]);
          const auto y_leaf = ProcessTree::leaf(y);
          for (auto op : kOperators) {
            for (int flip = 0; flip < 2; ++flip) {
              auto replacement = flip ? ProcessTree::make(op, {y_leaf, x_leaf}) : ProcessTree::make(op, {x_leaf, y_leaf});
              std::size_t counter = 0;
              if (auto c = admit(replace_leaf(tree, counter, leaf, replacement))) next.push_back(std::move(*c));
            }
          }
        }
      }
    }
    for (const auto& c : next) all.push_back(c);
    frontier = keep_best(std::move(next));
  }

  std::sort(all.begin(), all.end(), candidate_before);
  if (all.size() > params.max_results) all.resize(params.max_results);
  LpmRanking ranking;
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i].lpm.rank = i + 1;
    ranking.models.push_back(std::move(all[i].lpm));
  }
  return ranking;
}

}  // namespace lpmabs
