#include "lpmabs/conformance.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "lpmabs/alignment.hpp"
#include "lpmabs/errors.hpp"

namespace lpmabs {

AcceptingPetriNet expand_model(const AcceptingPetriNet& high, std::span<const ActivityPattern> patterns) {
  std::map<Activity, const ActivityPattern*> by_name;
  for (const auto& p : patterns) by_name.emplace(p.name, &p);

  LabeledPetriNet net;
  for (std::uint32_t i = 0; i < high.net.place_count(); ++i) net.add_place(high.net.place_name(PlaceId{i}));
  std::map<Activity, std::size_t> copies;
  for (std::uint32_t i = 0; i < high.net.transition_count(); ++i) {
    const auto& t = high.net.transition(TransitionId{i});
    const ActivityPattern* pattern = nullptr;
    if (t.label)
      if (auto it = by_name.find(*t.label); it != by_name.end()) pattern = it->second;
    if (!pattern) {
      auto id = net.add_transition(t.name, t.label);
      for (auto p : t.inputs) net.add_arc(p, id);
      for (auto p : t.outputs) net.add_arc(id, p);
      continue;
    }
    const auto& src = pattern->lpm.net;
    auto prefix = t.name + "#" + std::to_string(++copies[pattern->name]) + "/";
    std::vector<PlaceId> place_map;
    for (std::uint32_t p = 0; p < src.net.place_count(); ++p)
      place_map.push_back(net.add_place(prefix + src.net.place_name(PlaceId{p})));
    auto in = net.add_transition(prefix + "in");
    for (auto p : t.inputs) net.add_arc(p, in);
    for (auto p : src.initial.support()) net.add_arc(in, place_map[p.index]);
    for (std::uint32_t k = 0; k < src.net.transition_count(); ++k) {
      const auto& st = src.net.transition(TransitionId{k});
      auto id = net.add_transition(prefix + st.name, st.label);
      for (auto p : st.inputs) net.add_arc(place_map[p.index], id);
      for (auto p : st.outputs) net.add_arc(id, place_map[p.index]);
    }
    auto out = net.add_transition(prefix + "out");
    for (auto p : src.final_marking.support()) net.add_arc(place_map[p.index], out);
    for (auto p : t.outputs) net.add_arc(out, p);
  }
  Marking init(net.place_count()), fin(net.place_count());
  for (std::uint32_t i = 0; i < high.net.place_count(); ++i) {
    init.set(PlaceId{i}, high.initial[PlaceId{i}]);
    fin.set(PlaceId{i}, high.final_marking[PlaceId{i}]);
  }
  return AcceptingPetriNet(std::move(net), std::move(init), std::move(fin));
}

double f_score(double fitness, double precision) {
  if (fitness + precision <= 0.0) return 0.0;
  return 2.0 * fitness * precision / (fitness + precision);
}

namespace {

struct PrefixState {
  std::size_t weight = 0;
  ActivitySet taken;
  ActivitySet enabled;
};

ActivitySet enabled_labels(const AcceptingPetriNet& apn, const Marking& m, std::size_t state_limit) {
  ActivitySet out;
  for (const auto& c : tau_closure(apn.net, m, state_limit))
    for (auto t : enabled(apn.net, c))
      if (const auto& label = apn.net.transition(t).label) out.insert(*label);
  return out;
}

QualityReport run(const EventLog& log, const AcceptingPetriNet& apn, std::size_t state_limit, bool with_precision) {
  QualityReport report;
  if (log.empty()) return report;
  auto min_len = shortest_run_length(apn, state_limit);
  if (!min_len) throw Error("the model's final marking is unreachable");

  AlignmentOptions options;
  options.state_limit = state_limit;
  std::map<Word, Alignment> cache;
  std::map<Word, PrefixState> prefixes;
  std::map<Marking, ActivitySet> enabled_cache;
  auto enabled_at = [&](const Marking& m) -> const ActivitySet& {
    auto it = enabled_cache.find(m);
    if (it == enabled_cache.end()) it = enabled_cache.emplace(m, enabled_labels(apn, m, state_limit)).first;
    return it->second;
  };

  double fitness_sum = 0.0;
  for (const auto& trace : log.traces()) {
    auto word = trace.complete_word();
    auto it = cache.find(word);
    bool fresh = it == cache.end();
    if (fresh) {
      auto a = align(apn, word, options);
      if (!a) throw Error("trace '" + trace.case_id + "' cannot be aligned with the model");
      it = cache.emplace(word, std::move(*a)).first;
    }
    const auto& alignment = it->second;
    report.trace_costs.push_back(alignment.cost);
    auto denom = static_cast<double>(word.size() + *min_len);
    fitness_sum += denom == 0.0 ? 1.0 : 1.0 - static_cast<double>(alignment.cost) / denom;

    if (!with_precision) continue;
    // Enabled labels are read from the marking after the last visible move, so every
    // silent path the model could take from there counts.
    Marking m = apn.initial;
    Marking anchor = m;
    Word prefix;
    auto visit = [&](const Marking& at, const std::optional<Activity>& next) {
      auto& state = prefixes[prefix];
      state.weight += 1;
      if (next) state.taken.insert(*next);
      const auto& en = enabled_at(at);
      state.enabled.insert(en.begin(), en.end());
    };
    for (const auto& mv : alignment.moves) {
      if (!mv.transition) continue;
      const auto& t = apn.net.transition(*mv.transition);
      m = fire(apn.net, m, *mv.transition);
      if (t.label) {
        visit(anchor, t.label);
        prefix.push_back(*t.label);
        anchor = m;
      }
    }
    visit(anchor, std::nullopt);
  }
  report.fitness = fitness_sum / static_cast<double>(log.size());

  if (with_precision) {
    double escaping = 0.0, total = 0.0;
    for (const auto& [p, s] : prefixes) {
      std::size_t esc = 0;
      for (const auto& a : s.enabled)
        if (!s.taken.contains(a)) ++esc;
      escaping += static_cast<double>(s.weight * esc);
      total += static_cast<double>(s.weight * s.enabled.size());
    }
    report.precision = total == 0.0 ? 1.0 : 1.0 - escaping / total;
  }
  report.f_score = f_score(report.fitness, report.precision);
  return report;
}

}  // namespace

double fitness(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit) {
  return run(log, net, state_limit, false).fitness;
}

double precision(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit) {
  return run(log, net, state_limit, true).precision;
}

QualityReport evaluate(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit) {
  return run(log, net, state_limit, true);
}

std::string to_key_values(const QualityReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "fitness=%.6g\nprecision=%.6g\nf_score=%.6g\n", r.fitness, r.precision, r.f_score);
  return buf;
}

}  // namespace lpmabs
