#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lpmabs/errors.hpp"
#include "lpmabs/lpm_discovery.hpp"

using namespace lpmabs;
using namespace lpmabs::testing;

namespace {

EventLog log_of(std::initializer_list<std::pair<const char*, int>> variants) {
  std::vector<Trace> traces;
  for (const auto& [letters, n] : variants)
    for (int i = 0; i < n; ++i) traces.push_back(Trace::from_word(std::to_string(traces.size()), chars(letters)));
  return EventLog(std::move(traces));
}

std::size_t rank_of(const LpmRanking& ranking, const char* tree) {
  auto wanted = ProcessTree::parse(tree).canonical();
  for (const auto& m : ranking.models)
    if (m.tree == wanted) return m.rank;
  return 0;
}

}  // namespace

TEST(DiscoverLpms, RepeatedSequenceRanksFirst) {
  LpmSearchParams params;
  params.max_activities = 2;
  auto ranking = discover_lpms(log_of({{"abxab", 5}}), params);
  ASSERT_FALSE(ranking.empty());
  const auto& top = ranking.at_rank(1);
  EXPECT_EQ(top.tree->to_string(), "seq(a,b)");
  EXPECT_EQ(top.support, 20u);
}

TEST(DiscoverLpms, ConcurrencyOutranksSequence) {
  LpmSearchParams params;
  params.max_activities = 2;
  auto ranking = discover_lpms(log_of({{"ab", 5}, {"ba", 5}}), params);
  auto par = rank_of(ranking, "and(a,b)");
  auto seq = rank_of(ranking, "seq(a,b)");
  ASSERT_NE(par, 0u);
  ASSERT_NE(seq, 0u);
  EXPECT_LT(par, seq);
  EXPECT_EQ(ranking.at_rank(par).support, 20u);
  EXPECT_EQ(ranking.at_rank(seq).support, 10u);
}

TEST(DiscoverLpms, RankingInvariants) {
  auto log = log_of({{"abcxd", 4}, {"acbd", 3}, {"xxabc", 2}, {"dcba", 1}});
  auto ranking = discover_lpms(log);
  ASSERT_FALSE(ranking.empty());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& m = ranking.models[i];
    EXPECT_EQ(m.rank, i + 1);
    ASSERT_TRUE(m.tree);
    EXPECT_EQ(*m.tree, m.tree->canonical());
    EXPECT_EQ(m.support, support(log, m));
    EXPECT_LE(m.activities.size(), kDefaultMaxLpmActivities);
    if (m.activities.size() >= 2) EXPECT_GE(*shortest_run_length(m.net), 2u) << m.describe();
    if (i > 0) {
      EXPECT_GE(ranking.models[i - 1].support, m.support);
      EXPECT_FALSE(ranks_before(m, ranking.models[i - 1]));
    }
    for (std::size_t j = 0; j < i; ++j) EXPECT_NE(ranking.models[j].tree, m.tree);
  }
}

TEST(DiscoverLpms, ExhaustiveNeverWorseThanBeam) {
  auto log = log_of({{"abcab", 3}, {"cabba", 2}, {"bcabc", 2}});
  LpmSearchParams beam;
  beam.max_activities = 3;
  beam.beam_width = 2;
  auto exhaustive = beam;
  exhaustive.exhaustive = true;
  EXPECT_GE(discover_lpms(log, exhaustive).at_rank(1).support, discover_lpms(log, beam).at_rank(1).support);
}

TEST(DiscoverLpms, MinSupportAndLimits) {
  LpmSearchParams params;
  params.min_support = 3;
  params.max_results = 4;
  auto ranking = discover_lpms(log_of({{"abz", 3}}), params);
  EXPECT_LE(ranking.size(), 4u);
  for (const auto& m : ranking.models) EXPECT_GE(m.support, 3u);
}

TEST(DiscoverLpms, RejectsBadInput) {
  EXPECT_THROW(discover_lpms(EventLog{}), ConfigError);
  LpmSearchParams params;
  params.max_activities = 0;
  EXPECT_THROW(discover_lpms(log_of({{"ab", 1}}), params), ConfigError);
  EXPECT_THROW(LpmRanking{}.at_rank(1), ContractViolation);
}

TEST(BoundedLanguage, CountsShortWords) {
  // seq(a,b): {ab}; and(a,b): {ab, ba}; loop(a,b) up to length 3: {a, aba}.
  auto size = [](const char* t) { return bounded_language_size(LocalProcessModel::from_tree(ProcessTree::parse(t))); };
  EXPECT_EQ(size("seq(a,b)"), 1u);
  EXPECT_EQ(size("and(a,b)"), 2u);
  EXPECT_EQ(size("loop(a,b)"), 2u);
}
