#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpmabs {

/// A process activity, identified by its label.
class Activity {
 public:
  /// Throws ContractViolation on an empty label.
  explicit Activity(std::string label);

  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const Activity&, const Activity&) = default;
  friend auto operator<=>(const Activity&, const Activity&) = default;

 private:
  std::string label_;
};

using Word = std::vector<Activity>;
using ActivitySet = std::set<Activity>;

enum class Lifecycle { start, complete };

std::string_view to_string(Lifecycle lifecycle);
std::optional<Lifecycle> parse_lifecycle(std::string_view text);

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

struct Event {
  Activity activity;
  std::optional<Lifecycle> lifecycle;
  std::optional<Timestamp> timestamp;
  std::map<std::string, std::string> attributes;

  explicit Event(Activity a, std::optional<Lifecycle> lc = std::nullopt)
      : activity(std::move(a)), lifecycle(lc) {}

  /// Events without a lifecycle attribute count as completions.
  bool is_complete() const noexcept { return !lifecycle || *lifecycle == Lifecycle::complete; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  Trace() = default;
  Trace(std::string id, std::vector<Event> evs) : case_id(std::move(id)), events(std::move(evs)) {}

  /// Builds a trace of complete events from plain labels.
  static Trace from_labels(std::string id, std::initializer_list<std::string_view> labels);
  static Trace from_word(std::string id, const Word& word);

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }

  /// Activity sequence of all events.
  Word word() const;
  /// Activity sequence of complete-lifecycle events only.
  Word complete_word() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// A finite multiset of traces. Identical traces are kept as separate entries.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::vector<Trace> traces);

  std::span<const Trace> traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }
  const Trace& operator[](std::size_t i) const { return traces_[i]; }

  const ActivitySet& alphabet() const noexcept { return alphabet_; }
  std::size_t event_count() const noexcept;

  /// Distinct activity sequences with their multiplicities.
  std::map<Word, std::size_t> variants() const;
  /// Same, restricted to complete-lifecycle events.
  std::map<Word, std::size_t> complete_variants() const;

  friend bool operator==(const EventLog& a, const EventLog& b) { return a.traces_ == b.traces_; }

 private:
  std::vector<Trace> traces_;
  ActivitySet alphabet_;
};

/// Subsequence of `trace` keeping exactly the events whose activity is in `alphabet`.
Trace project(const Trace& trace, const ActivitySet& alphabet);
Word project(std::span<const Activity> word, const ActivitySet& alphabet);

std::string to_string(std::span<const Activity> word);

}  // namespace lpmabs

template <>
struct std::hash<lpmabs::Activity> {
  std::size_t operator()(const lpmabs::Activity& a) const noexcept {
    return std::hash<std::string>{}(a.label());
  }
};
