#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lpmabs/abstraction.hpp"
#include "lpmabs/errors.hpp"

using namespace lpmabs;
using namespace lpmabs::testing;

namespace {

ActivityPattern pattern(const char* name, const char* tree) {
  return ActivityPattern::from_lpm(Activity(name), LocalProcessModel::from_tree(ProcessTree::parse(tree)));
}

ActivityPattern n1_pattern() {
  return ActivityPattern::from_lpm(Activity("H"), LocalProcessModel::from_net(fixture_n1()));
}

std::map<std::string, Lifecycle> named(const AcceptingPetriNet& net, const LifecycleMap& map) {
  std::map<std::string, Lifecycle> out;
  for (const auto& [t, lc] : map) out[net.net.transition(t).name] = lc;
  return out;
}

std::size_t count_label(const Word& w, const char* label) {
  std::size_t n = 0;
  for (const auto& a : w) n += a.label() == label;
  return n;
}

}  // namespace

TEST(DeriveLifecycle, FixtureN1) {
  auto n1 = fixture_n1();
  EXPECT_EQ(named(n1, derive_lifecycle(n1)),
            (std::map<std::string, Lifecycle>{{"A", Lifecycle::start}, {"tau1", Lifecycle::start},
                                              {"C", Lifecycle::complete}}));
}

TEST(DeriveLifecycle, LeafAndSequence) {
  auto leaf = pattern("L", "a");
  ASSERT_EQ(leaf.lifecycle.size(), 1u);
  EXPECT_EQ(leaf.lifecycle.begin()->second, Lifecycle::complete);

  auto seq = pattern("S", "seq(a,b)");
  std::map<std::string, Lifecycle> by_label;
  for (const auto& [t, lc] : seq.lifecycle) {
    const auto& tr = seq.lpm.net.net.transition(t);
    if (!tr.silent()) by_label[tr.label->label()] = lc;
  }
  EXPECT_EQ(by_label, (std::map<std::string, Lifecycle>{{"a", Lifecycle::start}, {"b", Lifecycle::complete}}));
}

TEST(DeriveLifecycle, NoCompletingTransitionIsInvalid) {
  LabeledPetriNet n;
  auto p = n.add_place("p"), q = n.add_place("q");
  auto t = n.add_transition("a", Activity("a"));
  n.add_arc(p, t);
  EXPECT_THROW(derive_lifecycle(AcceptingPetriNet(n, Marking(2, {{p, 1}}), Marking(2, {{q, 1}}))), InvalidPattern);
}

TEST(Compose, InterleavingVersusParallel) {
  std::vector<ActivityPattern> patterns = {pattern("P", "seq(a,b)"), pattern("Q", "c")};
  auto inter = compose(patterns, Composition::interleaving);
  auto par = compose(patterns, Composition::parallel);
  EXPECT_FALSE(accepts(inter.net, chars("acb")));
  EXPECT_TRUE(accepts(par.net, chars("acb")));
  for (const char* w : {"abc", "cab", ""}) {
    EXPECT_TRUE(accepts(inter.net, chars(w))) << w;
    EXPECT_TRUE(accepts(par.net, chars(w))) << w;
  }
  EXPECT_EQ(inter.instance_tags.size(), inter.net.net.transition_count());
  EXPECT_EQ(inter.place_owner.size(), inter.net.net.place_count());
  EXPECT_EQ(inter.annotations().size(), inter.net.net.transition_count());
}

TEST(Compose, SinglePatternIsItsKleeneClosure) {
  for (auto mode : {Composition::interleaving, Composition::parallel}) {
    auto model = compose({n1_pattern()}, mode);
    std::set<Word> expected = {Word{}};
    auto base = language_upto(fixture_n1(), 4);
    for (const auto& u : base) {
      expected.insert(u);
      for (const auto& v : base)
        if (u.size() + v.size() <= 4) {
          Word w = u;
          w.insert(w.end(), v.begin(), v.end());
          expected.insert(w);
        }
    }
    EXPECT_EQ(language_upto(model.net, 4), expected) << to_string(mode);
  }
}

TEST(Compose, RejectsBadInput) {
  EXPECT_THROW(compose({}, Composition::interleaving), ContractViolation);
  EXPECT_THROW(compose({pattern("P", "a"), pattern("P", "b")}, Composition::parallel), InvalidPattern);
  EXPECT_THROW(parse_composition("sequence"), ConfigError);
  EXPECT_EQ(parse_composition("parallel"), Composition::parallel);
}

TEST(MakePatterns, NamesAndRenames) {
  std::vector<LocalProcessModel> models = {LocalProcessModel::from_tree(ProcessTree::parse("seq(a,b)")),
                                           LocalProcessModel::from_tree(ProcessTree::parse("c"))};
  auto ps = make_patterns(models, {{"LPM_2", "Pay"}});
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].name.label(), "LPM_1");
  EXPECT_EQ(ps[1].name.label(), "Pay");
}

TEST(AbstractTrace, WorkedExample) {
  auto model = compose({n1_pattern()}, Composition::interleaving);
  auto out = abstract_trace(worked_example_trace(), model);
  EXPECT_EQ(out.complete_word(), chars("AHCAHBBH"));
  EXPECT_EQ(out.case_id, "sigma");
  std::size_t starts = 0;
  for (const auto& e : out.events) starts += e.lifecycle == Lifecycle::start;
  EXPECT_EQ(starts, 3u);
}

TEST(AbstractTrace, KeepForeignPlacesXBeforeNextCompletion) {
  auto model = compose({n1_pattern()}, Composition::interleaving);
  auto word = abstract_trace(worked_example_trace(), model, true).complete_word();
  EXPECT_EQ(count_label(word, "X"), 2u);
  EXPECT_EQ(count_label(word, "H"), 3u);
  // Each X comes before the completion of the instance that spans or follows it.
  Word without_x;
  for (const auto& a : word)
    if (a.label() != "X") without_x.push_back(a);
  EXPECT_EQ(without_x, chars("AHCAHBBH"));
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].label() != "X") continue;
    bool h_after = false;
    for (std::size_t j = i + 1; j < word.size(); ++j) h_after = h_after || word[j].label() == "H";
    EXPECT_TRUE(h_after) << to_string(word);
  }
}

TEST(AbstractTrace, FullyCoveredTraceBecomesOneEvent) {
  auto model = compose({n1_pattern()}, Composition::interleaving);
  EXPECT_EQ(abstract_trace(Trace::from_word("t", chars("BBBC")), model).complete_word(), chars("H"));
  EXPECT_TRUE(abstract_trace(Trace("e", {}), model).empty());
}

TEST(AbstractTrace, TimestampsComeFromMatchedEvents) {
  auto model = compose({pattern("P", "seq(a,b)")}, Composition::interleaving);
  Trace t = Trace::from_word("t", chars("ab"));
  t.events[0].timestamp = Timestamp(std::chrono::milliseconds(1000));
  t.events[1].timestamp = Timestamp(std::chrono::milliseconds(5000));
  auto out = abstract_trace(t, model);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.events[0].lifecycle, Lifecycle::start);
  EXPECT_EQ(out.events[0].timestamp, t.events[0].timestamp);
  EXPECT_EQ(out.events[1].lifecycle, Lifecycle::complete);
  EXPECT_EQ(out.events[1].timestamp, t.events[1].timestamp);
}

TEST(AbstractLog, PreservesMultiplicity) {
  auto model = compose({n1_pattern()}, Composition::interleaving);
  EventLog log({worked_example_trace(), worked_example_trace()});
  auto out = abstract_log(log, model);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], out[1]);
  EXPECT_EQ(out[0].complete_word(), chars("AHCAHBBH"));
  EXPECT_TRUE(abstract_log(EventLog{}, model).empty());
}

TEST(AbstractTrace, ForeignTraceIsOneLogMove) {
  auto model = compose({pattern("P", "seq(a,b)")}, Composition::interleaving);
  auto al = align(Trace::from_word("t", chars("x")), model);
  EXPECT_EQ(al.cost, 1u);
  EXPECT_EQ(al.log_moves, 1u);
  EXPECT_TRUE(abstract_trace(Trace::from_word("t", chars("x")), model).empty());
  EXPECT_EQ(abstract_trace(Trace::from_word("t", chars("x")), model, true).complete_word(), chars("x"));
}

TEST(AbstractTrace, PropertyNeverLengthensAndKeepsOrder) {
  Rng rng(77);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "x"};
  std::vector<ActivityPattern> patterns = {pattern("P", "seq(a,b)"), pattern("Q", "and(c,d)")};
  for (auto mode : {Composition::interleaving, Composition::parallel}) {
    auto model = compose(patterns, mode);
    for (int i = 0; i < 150; ++i) {
      auto trace = Trace::from_word("t", random_word(rng, alphabet, 9));
      for (bool keep : {false, true}) {
        auto out = abstract_trace(trace, model, keep);
        EXPECT_LE(out.complete_word().size(), trace.size()) << to_string(trace.word());
        // Retained low-level events form a subsequence of the input.
        std::size_t pos = 0;
        for (const auto& a : out.complete_word()) {
          if (a.label() == "P" || a.label() == "Q") continue;
          while (pos < trace.size() && trace.events[pos].activity != a) ++pos;
          EXPECT_LT(pos, trace.size()) << to_string(trace.word()) << " -> " << to_string(out.complete_word());
          ++pos;
        }
        if (!keep) EXPECT_EQ(count_label(out.complete_word(), "x"), 0u);
      }
    }
  }
}

TEST(AbstractTrace, PropertyInstancesMatchSegmentsOnSinglePattern) {
  Rng rng(31);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  for (const char* tree : {"seq(a,b)", "seq(a,and(b,c))", "loop(a,b)"}) {
    auto p = pattern("H", tree);
    auto model = compose({p}, Composition::interleaving);
    for (int i = 0; i < 100; ++i) {
      auto trace = Trace::from_word("t", random_word(rng, alphabet, 8));
      auto seg = segment(trace, p.lpm);
      auto al = align(trace, model);
      if (al.model_moves != 0) continue;
      auto projected = project(trace, p.lpm.activities).size();
      if (al.cost != trace.size() - seg.gamma_size() || projected != trace.size()) continue;
      EXPECT_EQ(count_label(abstract_trace(trace, model).complete_word(), "H"), seg.gammas.size())
          << tree << " " << to_string(trace.word());
    }
  }
}
