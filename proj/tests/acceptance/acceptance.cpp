// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lpmabs/abstraction.hpp"
#include "lpmabs/conformance.hpp"
#include "lpmabs/discovery.hpp"
#include "lpmabs/diversity.hpp"
#include "lpmabs/generator.hpp"
#include "lpmabs/lpm.hpp"
#include "lpmabs/pipeline.hpp"
#include "lpmabs/visible_automaton.hpp"

using namespace lpmabs;
using namespace lpmabs::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Word labels(std::initializer_list<const char*> xs) {
  Word w;
  for (auto x : xs) w.emplace_back(x);
  return w;
}

Outcome worked_example_segmentation() {
  auto seg = segment(worked_example_trace(), fixture_n1());
  const std::vector<Word> lambdas = {labels({"A"}), labels({"C", "A"}), labels({"B", "B"}), Word{}};
  const std::vector<Word> gammas = {labels({"B", "B", "C"}), labels({"B", "C"}), labels({"A", "C"})};
  std::ostringstream got;
  for (std::size_t i = 0; i < seg.gammas.size(); ++i)
    got << "λ" << i + 1 << "=" << to_string(seg.lambda(i)) << " γ" << i + 1 << "=" << to_string(seg.gamma(i)) << " ";
  got << "λ" << seg.lambdas.size() << "=" << to_string(seg.lambda(seg.lambdas.size() - 1));
  if (seg.gammas.size() != gammas.size() || seg.lambdas.size() != lambdas.size()) return {false, got.str()};
  for (std::size_t i = 0; i < gammas.size(); ++i)
    if (seg.gamma(i) != gammas[i]) return {false, got.str()};
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (seg.lambda(i) != lambdas[i]) return {false, got.str()};
  if (seg.gamma_events() != labels({"B", "B", "C", "B", "C", "A", "C"})) return {false, got.str()};
  return {true, "Γ=" + to_string(seg.gamma_events())};
}

Outcome abstraction_golden() {
  auto pattern = ActivityPattern::from_lpm(Activity("H"), LocalProcessModel::from_net(fixture_n1()));
  auto model = compose({pattern}, Composition::interleaving);
  auto out = abstract_trace(worked_example_trace(), model, false);
  auto word = out.complete_word();
  auto expected = labels({"A", "H", "C", "A", "H", "B", "B", "H"});
  std::size_t h = 0;
  for (const auto& a : word) h += a.label() == "H";
  return {word == expected && h == 3, to_string(word)};
}

Outcome f_score_arithmetic() {
  double f = f_score(0.65, 0.86);
  char buf[64];
  std::snprintf(buf, sizeof buf, "f_score(0.65, 0.86) = %.4f", f);
  return {std::abs(f - 0.74) <= 0.005, buf};
}

Outcome segmentation_oracle() {
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  auto trees = enumerate_trees(alphabet, 3, 5);
  std::vector<Word> words;
  for (std::size_t len = 0; len <= 8; ++len)
    for (auto& w : all_words(alphabet, len)) words.push_back(std::move(w));
  std::size_t checks = 0;
  for (const auto& tree : trees) {
    auto net = tree_to_net(tree);
    auto language = language_upto(net, 8);
    VisibleAutomaton automaton(net);
    auto acts = tree.activities();
    std::map<Word, std::size_t> oracle;
    for (const auto& w : words) {
      auto projected = project(w, acts);
      auto it = oracle.find(projected);
      if (it == oracle.end()) it = oracle.emplace(projected, brute_force_gamma_size(projected, language)).first;
      auto seg = segment_projected(projected, automaton);
      ++checks;
      if (seg.gamma_size() != it->second)
        return {false, tree.to_string() + " on " + to_string(w) + ": segment " + std::to_string(seg.gamma_size()) +
                           " vs oracle " + std::to_string(it->second)};
      for (std::size_t g = 0; g < seg.gammas.size(); ++g)
        if (!language.contains(seg.gamma(g)))
          return {false, tree.to_string() + ": gamma " + to_string(seg.gamma(g)) + " not accepted"};
    }
  }
  return {true, std::to_string(trees.size()) + " trees x " + std::to_string(words.size()) + " traces (" +
                    std::to_string(checks) + " checks)"};
}

Outcome acceptance_oracle() {
  auto nets = fixture_nets();
  std::size_t checks = 0;
  for (const auto& [name, net] : nets) {
    auto language = language_upto(net, 6);
    std::vector<std::string> alphabet;
    for (const auto& a : net.net.activities()) alphabet.push_back(a.label());
    alphabet.push_back("z");  // a label no transition carries
    for (std::size_t len = 0; len <= 6; ++len) {
      for (const auto& w : all_words(alphabet, len)) {
        ++checks;
        if (accepts(net, w) != language.contains(w))
          return {false, name + " disagrees on " + to_string(w)};
      }
    }
  }
  return {true, std::to_string(nets.size()) + " nets, " + std::to_string(checks) + " words"};
}

Outcome diversity_properties() {
  Rng rng(99);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  constexpr int kRankings = 2000;
  for (int r = 0; r < kRankings; ++r) {
    LpmRanking ranking;
    auto n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      LocalProcessModel m;
      auto size = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      for (std::size_t j = 0; j < size; ++j)
        m.activities.insert(Activity(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]));
      m.rank = i + 1;
      ranking.models.push_back(std::move(m));
    }
    double t_div = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (r % 10 == 0) t_div = 0.0;
    auto k = std::uniform_int_distribution<std::size_t>(1, n + 2)(rng);
    for (auto order : {FilterOrder::topk_then_filter, FilterOrder::filter_then_topk}) {
      auto kept = filter_diverse(ranking, t_div, k, order);
      auto where = "ranking " + std::to_string(r);
      if (kept.empty() || kept.front().rank != 1) return {false, where + ": first model dropped"};
      for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i > 0 && kept[i].rank <= kept[i - 1].rank) return {false, where + ": order not preserved"};
        if (kept[i].activities != ranking.at_rank(kept[i].rank).activities)
          return {false, where + ": retained model differs from input"};
        for (std::size_t j = 0; j < i; ++j)
          if (kept[i].activities == kept[j].activities) return {false, where + ": duplicate activity set kept"};
      }
    }
  }
  return {true, std::to_string(kRankings) + " random rankings, both orders"};
}

Outcome end_to_end() {
  auto log = generate_log(planted_pattern_spec());
  PipelineConfig config;
  auto result = run_pipeline(log, config);
  const auto& a = result.abstraction.report;
  const auto& b = result.baseline.report;
  char buf[256];
  std::snprintf(buf, sizeof buf, "expanded F=%.4f (fit %.4f, prec %.4f) vs baseline F=%.4f (fit %.4f, prec %.4f)",
                a.f_score, a.fitness, a.precision, b.f_score, b.fitness, b.precision);
  return {a.f_score - b.f_score > 0.05, buf};
}

Outcome sweep_structure() {
  auto log = generate_log(planted_pattern_spec());
  SweepConfig config;
  config.log_name = "planted";
  auto rows = run_sweep(log, config);
  std::set<std::tuple<std::size_t, long, Composition>> cells;
  std::size_t ok = 0;
  for (const auto& row : rows) {
    cells.insert({row.k, std::lround(row.t_div * 10), row.composition});
    if (row.report) ++ok;
    auto line = csv_row(row);
    std::size_t commas = 0;
    for (char c : line) commas += c == ',';
    if (commas != 12) return {false, "malformed row: " + line};
  }
  bool pass = rows.size() == 80 && cells.size() == 80 && ok == 80;
  return {pass, std::to_string(rows.size()) + " rows, " + std::to_string(cells.size()) + " distinct cells, " +
                    std::to_string(ok) + " with metrics"};
}

Outcome discovery_sanity() {
  std::vector<Trace> traces;
  for (int i = 0; i < 2; ++i) traces.push_back(Trace::from_labels("abc" + std::to_string(i), {"a", "b", "c"}));
  for (int i = 0; i < 3; ++i) traces.push_back(Trace::from_labels("bac" + std::to_string(i), {"b", "a", "c"}));
  EventLog log(traces);
  auto tree = discover_model(log, 0.0);
  auto net = tree_to_net(tree);
  bool fits = true;
  for (const auto& t : log.traces()) fits = fits && accepts(net, t.word());
  auto expected = ProcessTree::parse("seq(and(a,b),c)").canonical();
  return {tree == expected && fits, tree.to_string() + (fits ? ", all traces accepted" : ", a trace is rejected")};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> check;
    double max_seconds;  // 0: no time bound
  };
  const std::vector<Criterion> criteria = {
      {"worked-example segmentation", worked_example_segmentation, 1.0},
      {"abstraction golden trace", abstraction_golden, 0.0},
      {"F-score arithmetic", f_score_arithmetic, 0.0},
      {"segmentation vs brute-force oracle", segmentation_oracle, 300.0},
      {"acceptance vs bounded language", acceptance_oracle, 0.0},
      {"diversity filter properties", diversity_properties, 0.0},
      {"end-to-end F-score improvement", end_to_end, 120.0},
      {"sweep grid structure", sweep_structure, 0.0},
      {"inductive discovery sanity", discovery_sanity, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].max_seconds > 0 && secs > criteria[i].max_seconds) {
      outcome.pass = false;
      outcome.detail += " [time limit " + std::to_string(static_cast<int>(criteria[i].max_seconds)) + " s exceeded]";
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%.2f s) -- %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), secs, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
