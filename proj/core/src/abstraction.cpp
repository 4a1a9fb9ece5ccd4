#include "lpmabs/abstraction.hpp"

#include <algorithm>
#include <set>

#include "lpmabs/errors.hpp"

namespace lpmabs {

LifecycleMap derive_lifecycle(const AcceptingPetriNet& apn) {
  const auto sources = apn.initial.support();
  const auto sinks = apn.final_marking.support();
  auto touches = [](const std::vector<PlaceId>& places, const std::vector<PlaceId>& set) {
    for (auto p : places)
      if (std::binary_search(set.begin(), set.end(), p)) return true;
    return false;
  };
  LifecycleMap theta;
  bool has_complete = false;
  for (std::uint32_t i = 0; i < apn.net.transition_count(); ++i) {
    const auto& t = apn.net.transition(TransitionId{i});
    if (touches(t.outputs, sinks)) {
      theta[TransitionId{i}] = Lifecycle::complete;
      has_complete = true;
    } else if (touches(t.inputs, sources)) {
      theta[TransitionId{i}] = Lifecycle::start;
    }
  }
  if (!has_complete) throw InvalidPattern("no transition of the pattern produces into its final marking");
  return theta;
}

LifecycleMap derive_lifecycle(const LocalProcessModel& lpm) { return derive_lifecycle(lpm.net); }

ActivityPattern ActivityPattern::from_lpm(Activity name, LocalProcessModel lpm) {
  auto theta = derive_lifecycle(lpm);
  return ActivityPattern{std::move(name), std::move(lpm), std::move(theta)};
}

std::vector<ActivityPattern> make_patterns(std::span<const LocalProcessModel> models,
                                           const std::map<std::string, std::string>& renames) {
  std::vector<ActivityPattern> out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto name = "LPM_" + std::to_string(i + 1);
    if (auto it = renames.find(name); it != renames.end()) name = it->second;
    out.push_back(ActivityPattern::from_lpm(Activity(name), models[i]));
  }
  return out;
}

std::string_view to_string(Composition c) {
  return c == Composition::interleaving ? "interleaving" : "parallel";
}

Composition parse_composition(std::string_view text) {
  if (text == "interleaving") return Composition::interleaving;
  if (text == "parallel") return Composition::parallel;
  throw ConfigError("unknown composition '" + std::string(text) + "' (expected interleaving or parallel)");
}

bool AbstractionModel::inside_instance_of(const Marking& m, const Activity& a) const {
  for (auto p : m.support()) {
    const auto& owner = place_owner[p.index];
    if (owner && patterns[*owner].lpm.activities.contains(a)) return true;
  }
  return false;
}

std::vector<TransitionAnnotations> AbstractionModel::annotations() const {
  std::vector<TransitionAnnotations> out;
  for (const auto& tag : instance_tags) {
    TransitionAnnotations a{{"pattern", patterns[tag.pattern].name.label()}};
    if (tag.kind == InstanceTag::Kind::enter) a["glue"] = "enter";
    if (tag.kind == InstanceTag::Kind::exit) a["glue"] = "exit";
    if (tag.role) a["lifecycle"] = std::string(to_string(*tag.role));
    out.push_back(std::move(a));
  }
  return out;
}

AbstractionModel compose(std::vector<ActivityPattern> patterns, Composition mode) {
  if (patterns.empty()) throw ContractViolation("compose needs at least one pattern");
  std::set<Activity> names;
  for (const auto& p : patterns)
    if (!names.insert(p.name).second) throw InvalidPattern("duplicate pattern name '" + p.name.label() + "'");

  AbstractionModel model;
  model.composition = mode;
  LabeledPetriNet net;
  std::vector<PlaceId> hubs;
  auto add_hub = [&](std::string name) {
    hubs.push_back(net.add_place(std::move(name)));
    model.place_owner.push_back(std::nullopt);
    return hubs.back();
  };
  if (mode == Composition::interleaving) add_hub("hub");

  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    const auto& pat = patterns[pi];
    const auto& src = pat.lpm.net;
    const auto& prefix = pat.name.label();
    for (auto counts : {src.initial.counts(), src.final_marking.counts()})
      for (auto c : counts)
        if (c > 1) throw InvalidPattern("pattern '" + prefix + "' has a marking with more than one token in a place");
    if (src.initial.empty() || src.final_marking.empty())
      throw InvalidPattern("pattern '" + prefix + "' needs non-empty initial and final markings");

    PlaceId hub = mode == Composition::interleaving ? hubs.front() : add_hub(prefix + "/hub");
    std::vector<PlaceId> place_map;
    for (std::uint32_t i = 0; i < src.net.place_count(); ++i) {
      place_map.push_back(net.add_place(prefix + "/" + src.net.place_name(PlaceId{i})));
      model.place_owner.push_back(pi);
    }
    auto enter = net.add_transition(prefix + "/enter");
    model.instance_tags.push_back({pi, InstanceTag::Kind::enter, std::nullopt});
    net.add_arc(hub, enter);
    for (auto p : src.initial.support()) net.add_arc(enter, place_map[p.index]);

    for (std::uint32_t i = 0; i < src.net.transition_count(); ++i) {
      const auto& t = src.net.transition(TransitionId{i});
      auto id = net.add_transition(prefix + "/" + t.name, t.label);
      std::optional<Lifecycle> role;
      if (auto it = pat.lifecycle.find(TransitionId{i}); it != pat.lifecycle.end()) role = it->second;
      model.instance_tags.push_back({pi, InstanceTag::Kind::inner, role});
      for (auto p : t.inputs) net.add_arc(place_map[p.index], id);
      for (auto p : t.outputs) net.add_arc(id, place_map[p.index]);
    }

    auto exit = net.add_transition(prefix + "/exit");
    model.instance_tags.push_back({pi, InstanceTag::Kind::exit, std::nullopt});
    for (auto p : src.final_marking.support()) net.add_arc(place_map[p.index], exit);
    net.add_arc(exit, hub);
  }

  Marking m(net.place_count());
  for (auto h : hubs) m.set(h, 1);
  model.net = AcceptingPetriNet(std::move(net), m, m);
  model.patterns = std::move(patterns);
  return model;
}

AlignmentOptions abstraction_alignment_options(const AbstractionModel& model, std::size_t state_limit) {
  AlignmentOptions options;
  options.costs = {.log_move = 1, .model_move = 2};
  options.state_limit = state_limit;
  options.forbid_log_move = [&model](const Marking& m, const Activity& a) { return model.inside_instance_of(m, a); };
  return options;
}

Alignment align(const Trace& trace, const AbstractionModel& model, std::size_t state_limit) {
  auto word = trace.complete_word();
  auto result = align(model.net, word, abstraction_alignment_options(model, state_limit));
  if (!result) throw Error("trace '" + trace.case_id + "' cannot be aligned with the abstraction model");
  return std::move(*result);
}

Trace abstract_trace(const Trace& trace, const AbstractionModel& model, bool keep_foreign, std::size_t state_limit) {
  std::vector<const Event*> events;
  for (const auto& e : trace.events)
    if (e.is_complete()) events.push_back(&e);
  const auto alignment = align(trace, model, state_limit);
  const auto& moves = alignment.moves;

  // First pass: per instance, the move index of its first visible model move, its
  // exit, and the first/last synchronously matched events.
  struct Instance {
    std::size_t pattern;
    std::optional<std::size_t> first_move;
    std::optional<std::size_t> first_event;
    std::optional<std::size_t> last_event;
    std::size_t exit_move = 0;
  };
  std::vector<Instance> instances;
  std::vector<std::optional<std::size_t>> open(model.patterns.size());
  std::map<std::size_t, std::size_t> start_at;     // move index -> instance
  std::map<std::size_t, std::size_t> complete_at;  // move index -> instance
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& mv = moves[i];
    if (!mv.transition) continue;
    const auto& tag = model.instance_tags[mv.transition->index];
    if (tag.kind == InstanceTag::Kind::enter) {
      open[tag.pattern] = instances.size();
      instances.push_back({tag.pattern, std::nullopt, std::nullopt, std::nullopt, 0});
      continue;
    }
    auto& inst = instances.at(open[tag.pattern].value());
    if (tag.kind == InstanceTag::Kind::exit) {
      inst.exit_move = i;
      open[tag.pattern].reset();
      continue;
    }
    if (mv.kind == AlignmentMove::Kind::model_move_tau) continue;
    if (!inst.first_move) inst.first_move = i;
    if (mv.kind == AlignmentMove::Kind::synchronous) {
      if (!inst.first_event) inst.first_event = mv.log_index;
      inst.last_event = mv.log_index;
    }
  }
  for (std::size_t k = 0; k < instances.size(); ++k) {
    if (!instances[k].first_event) continue;
    start_at[*instances[k].first_move] = k;
    complete_at[instances[k].exit_move] = k;
  }

  ActivitySet pattern_alphabet;
  for (const auto& p : model.patterns) pattern_alphabet.insert(p.lpm.activities.begin(), p.lpm.activities.end());

  auto high_level = [&](std::size_t k, Lifecycle lc) {
    const auto& inst = instances[k];
    const Event& anchor = *events[lc == Lifecycle::start ? *inst.first_event : *inst.last_event];
    Event e(model.patterns[inst.pattern].name, lc);
    e.timestamp = anchor.timestamp;
    return e;
  };

  Trace out;
  out.case_id = trace.case_id;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (auto s = start_at.find(i); s != start_at.end()) out.events.push_back(high_level(s->second, Lifecycle::start));
    if (auto c = complete_at.find(i); c != complete_at.end())
      out.events.push_back(high_level(c->second, Lifecycle::complete));
    const auto& mv = moves[i];
    if (mv.kind != AlignmentMove::Kind::log_move) continue;
    const Event& e = *events[*mv.log_index];
    if (keep_foreign || pattern_alphabet.contains(e.activity)) out.events.push_back(e);
  }
  return out;
}

EventLog abstract_log(const EventLog& log, const AbstractionModel& model, bool keep_foreign, std::size_t state_limit) {
  std::vector<Trace> traces;
  traces.reserve(log.size());
  for (const auto& t : log.traces()) traces.push_back(abstract_trace(t, model, keep_foreign, state_limit));
  return EventLog(std::move(traces));
}

}  // namespace lpmabs
