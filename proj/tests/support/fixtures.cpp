#include "fixtures.hpp"

#include <algorithm>
#include <cstddef>
#include <set>

namespace lpmabs {

void PrintTo(const Activity& a, std::ostream* os) { *os << a.label(); }

}  // namespace lpmabs

namespace lpmabs::testing {

AcceptingPetriNet fixture_n1() {
  LabeledPetriNet n;
  std::vector<PlaceId> p;
  for (int i = 0; i < 5; ++i) p.push_back(n.add_place("p" + std::to_string(i)));
  auto arc = [&](TransitionId t, int from, int to) {
    n.add_arc(p[from], t);
    n.add_arc(t, p[to]);
  };
  arc(n.add_transition("A", Activity("A")), 0, 3);
  arc(n.add_transition("tau1"), 0, 1);
  arc(n.add_transition("B", Activity("B")), 1, 2);
  arc(n.add_transition("tau2"), 2, 1);
  arc(n.add_transition("tau3"), 2, 3);
  arc(n.add_transition("C", Activity("C")), 3, 4);
  Marking init(5), fin(5);
  init.set(p[0], 1);
  fin.set(p[4], 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

Trace worked_example_trace() {
  return Trace::from_labels("sigma", {"A", "B", "X", "B", "C", "C", "A", "B", "C", "B", "B", "X", "A", "C"});
}

namespace {

AcceptingPetriNet from_tree(const char* text) { return tree_to_net(ProcessTree::parse(text)); }

/// a, then b and c concurrently via a visible fork, then d; no silent transitions.
AcceptingPetriNet visible_fork() {
  LabeledPetriNet n;
  auto i = n.add_place("i"), x = n.add_place("x"), y = n.add_place("y"), u = n.add_place("u"),
       v = n.add_place("v"), o = n.add_place("o");
  auto a = n.add_transition("a", Activity("a"));
  n.add_arc(i, a);
  n.add_arc(a, x);
  n.add_arc(a, y);
  auto b = n.add_transition("b", Activity("b"));
  n.add_arc(x, b);
  n.add_arc(b, u);
  auto c = n.add_transition("c", Activity("c"));
  n.add_arc(y, c);
  n.add_arc(c, v);
  auto d = n.add_transition("d", Activity("d"));
  n.add_arc(u, d);
  n.add_arc(v, d);
  n.add_arc(d, o);
  Marking init(6), fin(6);
  init.set(i, 1);
  fin.set(o, 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

/// Self-loop on b in the middle place: a bⁿ c.
AcceptingPetriNet self_loop() {
  LabeledPetriNet n;
  auto i = n.add_place("i"), m = n.add_place("m"), o = n.add_place("o");
  auto a = n.add_transition("a", Activity("a"));
  n.add_arc(i, a);
  n.add_arc(a, m);
  auto b = n.add_transition("b", Activity("b"));
  n.add_arc(m, b);
  n.add_arc(b, m);
  auto c = n.add_transition("c", Activity("c"));
  n.add_arc(m, c);
  n.add_arc(c, o);
  Marking init(3), fin(3);
  init.set(i, 1);
  fin.set(o, 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

/// Two initially marked places consumed by independent transitions a and b; the final
/// marking needs both results (a ∥ b without split/join transitions).
AcceptingPetriNet two_tokens() {
  LabeledPetriNet n;
  auto i1 = n.add_place("i1"), i2 = n.add_place("i2"), o1 = n.add_place("o1"), o2 = n.add_place("o2");
  auto a = n.add_transition("a", Activity("a"));
  n.add_arc(i1, a);
  n.add_arc(a, o1);
  auto b = n.add_transition("b", Activity("b"));
  n.add_arc(i2, b);
  n.add_arc(b, o2);
  Marking init(4), fin(4);
  init.set(i1, 1);
  init.set(i2, 1);
  fin.set(o1, 1);
  fin.set(o2, 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

/// Duplicate labels: two different transitions labeled a on alternative paths, ab | ac.
AcceptingPetriNet duplicate_labels() {
  LabeledPetriNet n;
  auto i = n.add_place("i"), x = n.add_place("x"), y = n.add_place("y"), o = n.add_place("o");
  auto a1 = n.add_transition("a1", Activity("a"));
  n.add_arc(i, a1);
  n.add_arc(a1, x);
  auto a2 = n.add_transition("a2", Activity("a"));
  n.add_arc(i, a2);
  n.add_arc(a2, y);
  auto b = n.add_transition("b", Activity("b"));
  n.add_arc(x, b);
  n.add_arc(b, o);
  auto c = n.add_transition("c", Activity("c"));
  n.add_arc(y, c);
  n.add_arc(c, o);
  Marking init(4), fin(4);
  init.set(i, 1);
  fin.set(o, 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

/// Final marking unreachable: empty language.
AcceptingPetriNet dead_end() {
  LabeledPetriNet n;
  auto i = n.add_place("i"), m = n.add_place("m"), o = n.add_place("o");
  auto a = n.add_transition("a", Activity("a"));
  n.add_arc(i, a);
  n.add_arc(a, m);
  Marking init(3), fin(3);
  init.set(i, 1);
  fin.set(o, 1);
  return AcceptingPetriNet(std::move(n), init, fin);
}

}  // namespace

std::vector<NamedNet> fixture_nets() {
  return {
      {"N1", fixture_n1()},
      {"seq", from_tree("seq(a,b,c)")},
      {"xor", from_tree("xor(a,b,c)")},
      {"and", from_tree("and(a,b,c)")},
      {"loop", from_tree("loop(seq(a,b),c)")},
      {"loop_tau", from_tree("loop(a,tau)")},
      {"nested", from_tree("seq(xor(a,tau),and(b,loop(c,tau)))")},
      {"and_of_seq", from_tree("and(seq(a,b),seq(c,d))")},
      {"loop_and", from_tree("loop(and(a,b),tau)")},
      {"visible_fork", visible_fork()},
      {"self_loop", self_loop()},
      {"two_tokens", two_tokens()},
      {"duplicate_labels", duplicate_labels()},
      {"dead_end", dead_end()},
  };
}

std::vector<ProcessTree> enumerate_trees(const std::vector<std::string>& alphabet, std::size_t max_activities,
                                         std::size_t max_nodes) {
  // trees[n] = every tree with exactly n nodes (activity repeats allowed at this stage).
  std::vector<std::vector<ProcessTree>> trees(max_nodes + 1);
  for (const auto& a : alphabet) trees[1].push_back(ProcessTree::leaf(a));
  trees[1].push_back(ProcessTree::tau());
  const ProcessTree::Kind ops[] = {ProcessTree::Kind::sequence, ProcessTree::Kind::choice,
                                   ProcessTree::Kind::parallel, ProcessTree::Kind::loop};
  for (std::size_t n = 3; n <= max_nodes; ++n) {
    // binary operators only: flattening during canonicalization covers n-ary shapes
    for (std::size_t left = 1; left + 1 < n; ++left) {
      auto right = n - 1 - left;
      for (const auto& l : trees[left])
        for (const auto& r : trees[right])
          for (auto op : ops) trees[n].push_back(ProcessTree::make(op, {l, r}));
    }
  }
  std::set<std::string> seen;
  std::vector<ProcessTree> out;
  for (const auto& level : trees) {
    for (const auto& t : level) {
      auto leaves = t.activity_leaves();
      if (leaves.empty()) continue;
      std::set<Activity> distinct(leaves.begin(), leaves.end());
      if (distinct.size() != leaves.size() || distinct.size() > max_activities) continue;
      auto c = t.canonical();
      if (seen.insert(c.to_string()).second) out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& a : alphabet) {
        auto x = w;
        x.emplace_back(a);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t brute_force_gamma_size(const Word& projected, const std::set<Word>& language) {
  const auto n = projected.size();
  // in_language[i][j]: the piece projected[i, j) is an accepted word
  std::vector<std::vector<bool>> in_language(n + 1, std::vector<bool>(n + 1, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      in_language[i][j] = language.contains(Word(projected.begin() + static_cast<std::ptrdiff_t>(i),
                                                  projected.begin() + static_cast<std::ptrdiff_t>(j)));
  std::size_t best = 0;
  // Each of the n-1 gaps is either a cut or not; every resulting piece is a gamma when
  // it is accepted and a lambda otherwise.
  const std::uint32_t partitions = n > 0 ? 1u << (n - 1) : 1u;
  for (std::uint32_t cuts = 0; cuts < partitions; ++cuts) {
    std::size_t covered = 0, begin = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 == n || (cuts >> i & 1u)) {
        if (in_language[begin][i + 1]) covered += i + 1 - begin;
        begin = i + 1;
      }
    }
    best = std::max(best, covered);
  }
  return best;
}

Word random_word(Rng& rng, const std::vector<std::string>& alphabet, std::size_t max_len) {
  auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  Word w;
  for (std::size_t i = 0; i < len; ++i)
    w.emplace_back(alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]);
  return w;
}

}  // namespace lpmabs::testing

namespace lpmabs::testing {

GeneratorSpec planted_pattern_spec() {
  GeneratorSpec spec;
  spec.patterns = {ProcessTree::parse("seq(a,b,c)"), ProcessTree::parse("and(d,e)")};
  spec.traces = 200;
  spec.min_instances = 1;
  spec.max_instances = 2;
  spec.noise = 0.3;
  spec.composition = Composition::interleaving;
  spec.seed = 7;
  return spec;
}

Word chars(std::string_view letters) {
  Word w;
  for (char c : letters) w.emplace_back(std::string(1, c));
  return w;
}

ActivitySet char_set(std::string_view letters) {
  auto w = chars(letters);
  return ActivitySet(w.begin(), w.end());
}

}  // namespace lpmabs::testing
