#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lpmabs/errors.hpp"
#include "lpmabs/lpm.hpp"
#include "lpmabs/visible_automaton.hpp"

using namespace lpmabs;
using namespace lpmabs::testing;

namespace {

EventLog repeated(std::string_view letters, int copies) {
  std::vector<Trace> traces;
  for (int i = 0; i < copies; ++i) traces.push_back(Trace::from_word(std::to_string(i), chars(letters)));
  return EventLog(std::move(traces));
}

std::size_t support_of(const char* tree, const EventLog& log) {
  return support(log, LocalProcessModel::from_tree(ProcessTree::parse(tree)));
}

}  // namespace

TEST(Segment, WorkedExample) {
  auto seg = segment(worked_example_trace(), fixture_n1());
  EXPECT_EQ(seg.projected, chars("ABBCCABCBBAC"));
  ASSERT_EQ(seg.gammas.size(), 3u);
  ASSERT_EQ(seg.lambdas.size(), 4u);
  EXPECT_EQ(seg.lambda(0), chars("A"));
  EXPECT_EQ(seg.gamma(0), chars("BBC"));
  EXPECT_EQ(seg.lambda(1), chars("CA"));
  EXPECT_EQ(seg.gamma(1), chars("BC"));
  EXPECT_EQ(seg.lambda(2), chars("BB"));
  EXPECT_EQ(seg.gamma(2), chars("AC"));
  EXPECT_EQ(seg.lambda(3), Word{});
  EXPECT_EQ(seg.gamma_events(), chars("BBCBCAC"));
  // X events at original positions 2 and 11 are projected away.
  EXPECT_EQ(seg.source_index, (std::vector<std::size_t>{0, 1, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13}));
}

TEST(Segment, EmptyTraceIsOneEmptyLambda) {
  auto seg = segment(Trace("e", {}), fixture_n1());
  EXPECT_TRUE(seg.gammas.empty());
  ASSERT_EQ(seg.lambdas.size(), 1u);
  EXPECT_EQ(seg.lambda(0), Word{});
}

TEST(Segment, WholeTraceIsOneGamma) {
  auto seg = segment(Trace::from_word("t", chars("AC")), fixture_n1());
  ASSERT_EQ(seg.gammas.size(), 1u);
  EXPECT_EQ(seg.lambda(0), Word{});
  EXPECT_EQ(seg.gamma(0), chars("AC"));
  EXPECT_EQ(seg.lambda(1), Word{});
}

TEST(Support, WorkedExampleWithN1) {
  EventLog log({worked_example_trace()});
  EXPECT_EQ(support(log, fixture_n1()), 7u);
}

TEST(Support, FrozenOracleValues) {
  auto log = repeated("abxab", 5);
  EXPECT_EQ(support_of("seq(a,b)", log), 20u);
  EXPECT_EQ(support_of("loop(seq(a,b),x)", log), 25u);
  auto mixed = repeated("ab", 5);
  auto ba = repeated("ba", 5);
  std::vector<Trace> all(mixed.traces().begin(), mixed.traces().end());
  all.insert(all.end(), ba.traces().begin(), ba.traces().end());
  EventLog both(std::move(all));
  EXPECT_EQ(support_of("and(a,b)", both), 20u);
  EXPECT_EQ(support_of("seq(a,b)", both), 10u);
}

TEST(Segment, PropertyPartitionAndOptimality) {
  Rng rng(21);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  const char* trees[] = {"seq(a,b)", "loop(a,b)", "and(a,xor(b,c))", "seq(a,loop(b,tau),c)", "xor(seq(a,b),c)"};
  for (const char* text : trees) {
    auto net = tree_to_net(ProcessTree::parse(text));
    auto language = language_upto(net, 10);
    VisibleAutomaton automaton(net);
    for (int i = 0; i < 300; ++i) {
      auto w = random_word(rng, alphabet, 10);
      auto seg = segment_projected(w, automaton);
      ASSERT_EQ(seg.lambdas.size(), seg.gammas.size() + 1);
      std::size_t pos = 0;
      for (std::size_t g = 0; g <= seg.gammas.size(); ++g) {
        EXPECT_EQ(seg.lambdas[g].begin, pos);
        pos = seg.lambdas[g].end;
        if (g == seg.gammas.size()) break;
        EXPECT_EQ(seg.gammas[g].begin, pos);
        EXPECT_GT(seg.gammas[g].size(), 0u);
        EXPECT_TRUE(language.contains(seg.gamma(g))) << text;
        pos = seg.gammas[g].end;
      }
      EXPECT_EQ(pos, w.size());
      EXPECT_EQ(seg.gamma_size(), brute_force_gamma_size(w, language)) << text << " " << to_string(w);
      EXPECT_EQ(max_gamma_size(w, automaton), seg.gamma_size());
    }
  }
}

TEST(Support, PropertyAdditiveOverTraces) {
  Rng rng(8);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  auto lpm = LocalProcessModel::from_tree(ProcessTree::parse("seq(a,and(b,c))"));
  for (int i = 0; i < 50; ++i) {
    std::vector<Trace> traces;
    std::size_t sum = 0, projected = 0;
    for (int j = 0; j < 5; ++j) {
      traces.push_back(Trace::from_word(std::to_string(j), random_word(rng, alphabet, 12)));
      sum += support(EventLog({traces.back()}), lpm);
      projected += project(traces.back(), lpm.activities).size();
    }
    auto total = support(EventLog(traces), lpm);
    EXPECT_EQ(total, sum);
    EXPECT_LE(total, projected);
  }
}

TEST(LocalProcessModel, FromTreeChecksActivities) {
  EXPECT_THROW(LocalProcessModel::from_tree(ProcessTree::parse("seq(a,a)")), ContractViolation);
  EXPECT_THROW(LocalProcessModel::from_tree(ProcessTree::parse("seq(a,b,c)"), 2), ContractViolation);
  auto lpm = LocalProcessModel::from_tree(ProcessTree::parse("seq(a,b)"));
  EXPECT_EQ(lpm.activities, char_set("ab"));
  EXPECT_EQ(lpm.describe(), "seq(a,b)");
}
