#include "lpmabs/eventlog.hpp"

#include "lpmabs/errors.hpp"

namespace lpmabs {

Activity::Activity(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw ContractViolation("activity label must not be empty");
}

std::string_view to_string(Lifecycle lifecycle) {
  return lifecycle == Lifecycle::start ? "start" : "complete";
}

std::optional<Lifecycle> parse_lifecycle(std::string_view text) {
  if (text == "start") return Lifecycle::start;
  if (text == "complete") return Lifecycle::complete;
  return std::nullopt;
}

Trace Trace::from_labels(std::string id, std::initializer_list<std::string_view> labels) {
  Trace t;
  t.case_id = std::move(id);
  t.events.reserve(labels.size());
  for (auto l : labels) t.events.emplace_back(Activity(std::string(l)));
  return t;
}

Trace Trace::from_word(std::string id, const Word& word) {
  Trace t;
  t.case_id = std::move(id);
  t.events.reserve(word.size());
  for (const auto& a : word) t.events.emplace_back(a);
  return t;
}

Word Trace::word() const {
  Word w;
  w.reserve(events.size());
  for (const auto& e : events) w.push_back(e.activity);
  return w;
}

Word Trace::complete_word() const {
  Word w;
  w.reserve(events.size());
  for (const auto& e : events)
    if (e.is_complete()) w.push_back(e.activity);
  return w;
}

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
  for (const auto& t : traces_)
    for (const auto& e : t.events) alphabet_.insert(e.activity);
}

std::size_t EventLog::event_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : traces_) n += t.size();
  return n;
}

std::map<Word, std::size_t> EventLog::variants() const {
  std::map<Word, std::size_t> out;
  for (const auto& t : traces_) ++out[t.word()];
  return out;
}

std::map<Word, std::size_t> EventLog::complete_variants() const {
  std::map<Word, std::size_t> out;
  for (const auto& t : traces_) ++out[t.complete_word()];
  return out;
}

Trace project(const Trace& trace, const ActivitySet& alphabet) {
  Trace out;
  out.case_id = trace.case_id;
  for (const auto& e : trace.events)
    if (alphabet.contains(e.activity)) out.events.push_back(e);
  return out;
}

Word project(std::span<const Activity> word, const ActivitySet& alphabet) {
  Word out;
  for (const auto& a : word)
    if (alphabet.contains(a)) out.push_back(a);
  return out;
}

std::string to_string(std::span<const Activity> word) {
  std::string s = "<";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ",";
    s += word[i].label();
  }
  return s + ">";
}

}  // namespace lpmabs
