#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpmabs/alignment.hpp"
#include "lpmabs/eventlog.hpp"
#include "lpmabs/lpm.hpp"
#include "lpmabs/pnml.hpp"

namespace lpmabs {

/// Lifecycle role of pattern-net transitions; transitions without a role are absent.
using LifecycleMap = std::map<TransitionId, Lifecycle>;

/// Transitions consuming from an initially marked place map to start, transitions
/// producing into a finally marked place map to complete (complete wins when both
/// apply). Throws InvalidPattern when no transition maps to complete.
LifecycleMap derive_lifecycle(const AcceptingPetriNet& net);
LifecycleMap derive_lifecycle(const LocalProcessModel& lpm);

/// An LPM promoted to a named high-level activity.
struct ActivityPattern {
  Activity name;
  LocalProcessModel lpm;
  LifecycleMap lifecycle;

  /// Derives the lifecycle map from the model's net.
  static ActivityPattern from_lpm(Activity name, LocalProcessModel lpm);
};

/// Names the models LPM_1, LPM_2, ... in the given order. `renames` maps generated
/// names to user-chosen ones.
std::vector<ActivityPattern> make_patterns(std::span<const LocalProcessModel> models,
                                           const std::map<std::string, std::string>& renames = {});

enum class Composition { interleaving, parallel };

std::string_view to_string(Composition c);
/// Throws ConfigError on anything but "interleaving" or "parallel".
Composition parse_composition(std::string_view text);

/// Role of one transition of the composed net.
struct InstanceTag {
  enum class Kind { enter, exit, inner };
  std::size_t pattern = 0;  // index into AbstractionModel::patterns
  Kind kind = Kind::inner;
  std::optional<Lifecycle> role;  // lifecycle role of the embedded transition
};

/// Patterns composed into a single alignable net.
///
/// interleaving: one hub place, marked initially and finally; every pattern is entered
/// from and returns to the hub, so at most one instance is active at any time.
/// parallel: one hub per pattern; instances of different patterns may overlap, while
/// instances of the same pattern are serialized.
struct AbstractionModel {
  AcceptingPetriNet net;
  std::vector<ActivityPattern> patterns;
  Composition composition = Composition::interleaving;
  /// One entry per transition of `net`.
  std::vector<InstanceTag> instance_tags;
  /// Owning pattern of every place; nullopt for hub places.
  std::vector<std::optional<std::size_t>> place_owner;

  /// True when some token lies inside a pattern whose alphabet contains `a`.
  bool inside_instance_of(const Marking& m, const Activity& a) const;

  /// PNML annotations carrying the instance tags.
  std::vector<TransitionAnnotations> annotations() const;
};

/// Throws ContractViolation on an empty list and InvalidPattern on duplicate names,
/// unsafe markings or empty initial/final markings.
AbstractionModel compose(std::vector<ActivityPattern> patterns, Composition mode);

/// Cost model used to align traces against an abstraction model: log moves cost 1,
/// visible model moves cost 2, and an event may not be skipped while an instance of a
/// pattern containing its activity is active.
AlignmentOptions abstraction_alignment_options(const AbstractionModel& model,
                                               std::size_t state_limit = kDefaultStateLimit);

/// Aligns the complete-lifecycle events of `trace`; log indices refer to those events.
Alignment align(const Trace& trace, const AbstractionModel& model,
                std::size_t state_limit = kDefaultStateLimit);

/// Lifts a trace: each pattern instance with at least one synchronous move becomes a
/// start event just before its first model move and a complete event at its exit.
/// Skipped events from pattern alphabets stay in place; other skipped events are kept
/// only with `keep_foreign`. Input events with a start lifecycle are not aligned and
/// dropped.
Trace abstract_trace(const Trace& trace, const AbstractionModel& model, bool keep_foreign = false,
                     std::size_t state_limit = kDefaultStateLimit);

EventLog abstract_log(const EventLog& log, const AbstractionModel& model, bool keep_foreign = false,
                      std::size_t state_limit = kDefaultStateLimit);

}  // namespace lpmabs
