#include "lpmabs/discovery.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

using Variants = std::map<Word, std::size_t>;
using Part = ActivitySet;

struct Cut {
  ProcessTree::Kind op;
  std::vector<Part> parts;  // for loops: body first, then redo parts
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Dense view of a graph for cut detection.
struct Graph {
  std::vector<Activity> acts;
  std::vector<std::vector<bool>> adj;
  std::vector<bool> start;
  std::vector<bool> end;

  explicit Graph(const DirectlyFollowsGraph& g) {
    for (const auto& [a, n] : g.nodes) acts.push_back(a);
    const auto n = acts.size();
    adj.assign(n, std::vector<bool>(n, false));
    start.assign(n, false);
    end.assign(n, false);
    auto idx = [&](const Activity& a) {
      return static_cast<std::size_t>(std::lower_bound(acts.begin(), acts.end(), a) - acts.begin());
    };
    for (const auto& [e, c] : g.edges) adj[idx(e.first)][idx(e.second)] = true;
    for (const auto& [a, c] : g.start_counts) start[idx(a)] = true;
    for (const auto& [a, c] : g.end_counts) end[idx(a)] = true;
  }

  std::size_t size() const { return acts.size(); }

  std::vector<Part> groups(UnionFind& uf) const {
    std::map<std::size_t, Part> by_root;
    for (std::size_t i = 0; i < size(); ++i) by_root[uf.find(i)].insert(acts[i]);
    std::vector<Part> out;
    for (auto& [r, p] : by_root) out.push_back(std::move(p));
    return out;
  }

  std::vector<std::vector<bool>> reachability() const {
    auto r = adj;
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t i = 0; i < size(); ++i)
        if (r[i][k])
          for (std::size_t j = 0; j < size(); ++j)
            if (r[k][j]) r[i][j] = true;
    return r;
  }
};

std::optional<Cut> xor_cut(const Graph& g) {
  UnionFind uf(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adj[i][j]) uf.unite(i, j);
  auto parts = g.groups(uf);
  if (parts.size() < 2) return std::nullopt;
  return Cut{ProcessTree::Kind::choice, std::move(parts)};
}

std::optional<Cut> sequence_cut(const Graph& g) {
  const auto n = g.size();
  const auto reach = g.reachability();
  auto comparable = [&](std::size_t i, std::size_t j) { return reach[i][j] || reach[j][i]; };
  // Mutually reachable activities and incomparable activities cannot be separated.
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((reach[i][j] && reach[j][i]) || !comparable(i, j)) uf.unite(i, j);
  // Groups whose members are ordered both ways must merge as well.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (uf.find(i) != uf.find(j) && reach[i][j])
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
              if (uf.find(k) == uf.find(j) && uf.find(l) == uf.find(i) && reach[k][l] && uf.unite(i, j))
                changed = true;
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[uf.find(i)].push_back(i);
  if (members.size() < 2) return std::nullopt;
  std::vector<std::size_t> roots;
  for (const auto& [r, m] : members) roots.push_back(r);
  auto before = [&](std::size_t a, std::size_t b) { return reach[members[a].front()][members[b].front()]; };
  std::sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) { return a != b && before(a, b); });
  Cut cut{ProcessTree::Kind::sequence, {}};
  for (auto r : roots) {
    Part p;
    for (auto i : members[r]) p.insert(g.acts[i]);
    cut.parts.push_back(std::move(p));
  }
  return cut;
}

std::optional<Cut> parallel_cut(const Graph& g) {
  const auto n = g.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(g.adj[i][j] && g.adj[j][i])) uf.unite(i, j);
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[uf.find(i)].push_back(i);
  auto complete = [&](const std::vector<std::size_t>& m) {
    bool s = false, e = false;
    for (auto i : m) {
      s = s || g.start[i];
      e = e || g.end[i];
    }
    return s && e;
  };
  // Parts lacking a start or an end activity are merged into another part.
  for (bool merged = true; merged && members.size() > 1;) {
    merged = false;
    for (auto it = members.begin(); it != members.end(); ++it) {
      if (complete(it->second)) continue;
      auto target = it == members.begin() ? std::next(it) : members.begin();
      target->second.insert(target->second.end(), it->second.begin(), it->second.end());
      members.erase(it);
      merged = true;
      break;
    }
  }
  if (members.size() < 2) return std::nullopt;
  Cut cut{ProcessTree::Kind::parallel, {}};
  for (const auto& [r, m] : members) {
    Part p;
    for (auto i : m) p.insert(g.acts[i]);
    cut.parts.push_back(std::move(p));
  }
  return cut;
}

std::optional<Cut> loop_cut(const Graph& g) {
  const auto n = g.size();
  std::vector<bool> body(n, false);
  bool any_start = false;
  for (std::size_t i = 0; i < n; ++i) {
    body[i] = g.start[i] || g.end[i];
    any_start = any_start || g.start[i];
  }
  if (!any_start) return std::nullopt;
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!body[i] && !body[j] && (g.adj[i][j] || g.adj[j][i])) uf.unite(i, j);

  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::size_t, std::vector<std::size_t>> redo;
    for (std::size_t i = 0; i < n; ++i)
      if (!body[i]) redo[uf.find(i)].push_back(i);
    for (const auto& [r, comp] : redo) {
      bool ok = true;
      for (auto c : comp) {
        bool from_end = false, all_from_end = true, to_start = false, all_to_start = true;
        for (std::size_t b = 0; b < n; ++b) {
          if (!body[b]) continue;
          // Body activities may only leave through end activities and re-enter through
          // start activities.
          if (g.adj[b][c] && !g.end[b]) ok = false;
          if (g.adj[c][b] && !g.start[b]) ok = false;
          if (g.end[b]) {
            from_end = from_end || g.adj[b][c];
            all_from_end = all_from_end && g.adj[b][c];
          }
          if (g.start[b]) {
            to_start = to_start || g.adj[c][b];
            all_to_start = all_to_start && g.adj[c][b];
          }
        }
        if ((from_end && !all_from_end) || (to_start && !all_to_start)) ok = false;
      }
      if (!ok) {
        for (auto c : comp) body[c] = true;
        changed = true;
        break;
      }
    }
  }
  Cut cut{ProcessTree::Kind::loop, {Part{}}};
  std::map<std::size_t, Part> redo;
  for (std::size_t i = 0; i < n; ++i) {
    if (body[i]) cut.parts.front().insert(g.acts[i]);
    else redo[uf.find(i)].insert(g.acts[i]);
  }
  if (redo.empty()) return std::nullopt;
  for (auto& [r, p] : redo) cut.parts.push_back(std::move(p));
  return cut;
}

std::optional<Cut> find_cut(const DirectlyFollowsGraph& dfg) {
  Graph g(dfg);
  if (auto c = xor_cut(g)) return c;
  if (auto c = sequence_cut(g)) return c;
  if (auto c = parallel_cut(g)) return c;
  return loop_cut(g);
}

std::size_t part_of(const std::vector<Part>& parts, const Activity& a) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].contains(a)) return i;
  return parts.size();
}

std::vector<Variants> split_log(const Variants& log, const Cut& cut) {
  const auto& parts = cut.parts;
  std::vector<Variants> sub(parts.size());
  for (const auto& [word, n] : log) {
    switch (cut.op) {
      case ProcessTree::Kind::choice: {
        std::vector<std::size_t> hits(parts.size(), 0);
        for (const auto& a : word)
          if (auto p = part_of(parts, a); p < parts.size()) ++hits[p];
        auto best = static_cast<std::size_t>(std::max_element(hits.begin(), hits.end()) - hits.begin());
        sub[best][project(word, parts[best])] += n;
        break;
      }
      case ProcessTree::Kind::sequence: {
        // Assign a non-decreasing part index to every event, minimizing the number of
        // events that end up in a part not containing their activity.
        const auto k = parts.size();
        const auto len = word.size();
        std::vector<std::vector<std::size_t>> cost(len + 1, std::vector<std::size_t>(k, 0));
        for (std::size_t i = len; i-- > 0;) {
          for (std::size_t p = k; p-- > 0;) {
            auto here = cost[i + 1][p] + (parts[p].contains(word[i]) ? 0 : 1);
            cost[i][p] = p + 1 < k ? std::min(here, cost[i][p + 1]) : here;
          }
        }
        std::vector<Word> pieces(k);
        std::size_t p = 0;
        for (std::size_t i = 0; i < len; ++i) {
          while (p + 1 < k && cost[i][p + 1] < cost[i + 1][p] + (parts[p].contains(word[i]) ? 0 : 1)) ++p;
          if (parts[p].contains(word[i])) pieces[p].push_back(word[i]);
        }
        for (std::size_t q = 0; q < k; ++q) sub[q][pieces[q]] += n;
        break;
      }
      case ProcessTree::Kind::parallel:
        for (std::size_t q = 0; q < parts.size(); ++q) sub[q][project(word, parts[q])] += n;
        break;
      case ProcessTree::Kind::loop: {
        // Alternating body and redo segments; a trace starting with redo behaviour
        // contributes an empty body execution.
        Word body, redo;
        bool in_body = true;
        std::size_t redo_part = 0;
        for (const auto& a : word) {
          auto p = part_of(parts, a);
          if (p == 0) {
            if (!in_body) {
              sub[redo_part][redo] += n;
              redo.clear();
              in_body = true;
            }
            body.push_back(a);
          } else if (p < parts.size()) {
            if (in_body) {
              sub[0][body] += n;
              body.clear();
              in_body = false;
              redo_part = p;
            }
            if (parts[redo_part].contains(a)) redo.push_back(a);
          }
        }
        if (in_body) {
          sub[0][body] += n;
        } else {
          sub[redo_part][redo] += n;
          sub[0][Word{}] += n;
        }
        break;
      }
      default:
        break;
    }
  }
  return sub;
}

class Miner {
 public:
  explicit Miner(double noise) : noise_(noise) {}

  ProcessTree mine(const Variants& log) {
    std::size_t total = 0, empty = 0;
    Variants nonempty;
    ActivitySet alphabet;
    for (const auto& [w, n] : log) {
      total += n;
      if (w.empty()) {
        empty += n;
        continue;
      }
      nonempty[w] += n;
      alphabet.insert(w.begin(), w.end());
    }
    if (nonempty.empty()) return ProcessTree::tau();
    if (empty > 0 && static_cast<double>(empty) >= noise_ * static_cast<double>(total))
      return ProcessTree::choice({ProcessTree::tau(), mine(nonempty)});

    if (alphabet.size() == 1) {
      std::size_t singles = 0, all = 0;
      for (const auto& [w, n] : nonempty) {
        all += n;
        if (w.size() == 1) singles += n;
      }
      auto leaf = ProcessTree::leaf(*alphabet.begin());
      if (singles == all || static_cast<double>(all - singles) < noise_ * static_cast<double>(all)) return leaf;
      return ProcessTree::loop(std::move(leaf), ProcessTree::tau());
    }

    auto cut = find_cut(build_dfg(nonempty, 0.0));
    if (!cut && noise_ > 0) cut = find_cut(build_dfg(nonempty, noise_));
    if (!cut) return flower(alphabet);

    auto sublogs = split_log(nonempty, *cut);
    std::vector<ProcessTree> children;
    if (cut->op == ProcessTree::Kind::loop) {
      auto body = mine(sublogs[0]);
      std::vector<ProcessTree> redo;
      for (std::size_t i = 1; i < sublogs.size(); ++i)
        if (!sublogs[i].empty()) redo.push_back(mine(sublogs[i]));
      if (redo.empty()) return body;
      auto redo_tree = redo.size() == 1 ? std::move(redo.front()) : ProcessTree::choice(std::move(redo));
      return ProcessTree::loop(std::move(body), std::move(redo_tree));
    }
    for (const auto& s : sublogs)
      if (!s.empty()) children.push_back(mine(s));
    if (children.size() == 1) return std::move(children.front());
    return ProcessTree::make(cut->op, std::move(children));
  }

 private:
  static ProcessTree flower(const ActivitySet& alphabet) {
    std::vector<ProcessTree> leaves;
    for (const auto& a : alphabet) leaves.push_back(ProcessTree::leaf(a));
    return ProcessTree::loop(ProcessTree::choice(std::move(leaves)), ProcessTree::tau());
  }

  double noise_;
};

}  // namespace

ProcessTree discover_model(const std::map<Word, std::size_t>& variants, double noise) {
  if (!(noise >= 0.0 && noise < 1.0)) throw ConfigError("noise must lie in [0, 1)");
  return Miner(noise).mine(variants).canonical();
}

ProcessTree discover_model(const EventLog& log, double noise) {
  return discover_model(log.complete_variants(), noise);
}

}  // namespace lpmabs
