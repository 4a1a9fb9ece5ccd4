#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/petri_net.hpp"

namespace lpmabs {

/// Block-structured process model.
///
/// Textual form (also what `to_string` emits): `seq(a,b)`, `xor(a,b)`, `and(a,b)`,
/// `loop(body,redo)`, `tau`, and activity labels. Labels that are not plain
/// identifiers are double-quoted with `\"` and `\\` escapes. The parser also accepts
/// the `->`, `X`, `+`, `*` operator spellings.
///
/// `loop(body, redo)` executes body, then zero or more (redo, body) repetitions.
class ProcessTree {
 public:
  enum class Kind { activity, tau, sequence, choice, parallel, loop };

  static ProcessTree leaf(Activity a);
  static ProcessTree leaf(std::string label) { return leaf(Activity(std::move(label))); }
  static ProcessTree tau();
  /// Operators need at least one child; throws ContractViolation otherwise.
  static ProcessTree sequence(std::vector<ProcessTree> children);
  static ProcessTree choice(std::vector<ProcessTree> children);
  static ProcessTree parallel(std::vector<ProcessTree> children);
  static ProcessTree loop(ProcessTree body, ProcessTree redo);
  static ProcessTree make(Kind op, std::vector<ProcessTree> children);

  /// Throws ParseError on malformed input.
  static ProcessTree parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_leaf() const noexcept { return kind_ == Kind::activity || kind_ == Kind::tau; }
  /// Only valid for Kind::activity.
  const Activity& activity() const;
  std::span<const ProcessTree> children() const noexcept { return children_; }

  std::size_t node_count() const noexcept;
  ActivitySet activities() const;
  /// Activity leaves in depth-first, left-to-right order (duplicates kept).
  std::vector<Activity> activity_leaves() const;

  /// Flattens nested sequence/choice/parallel nodes of the same operator, unwraps
  /// single-child operators and sorts choice/parallel children by activity set, then
  /// by textual form. Language-preserving.
  ProcessTree canonical() const;

  std::string to_string() const;

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;

 private:
  ProcessTree(Kind k, std::optional<Activity> a, std::vector<ProcessTree> c)
      : kind_(k), activity_(std::move(a)), children_(std::move(c)) {}

  Kind kind_;
  std::optional<Activity> activity_;
  std::vector<ProcessTree> children_;
};

std::string_view operator_name(ProcessTree::Kind kind);

/// Compositional translation: one initial place with one token, one final place.
/// Choice branches share the entry/exit places, parallel nodes use a silent split and
/// join, loops are wrapped in silent entry/exit transitions with the redo part
/// leading back to the body's start. The result is a safe workflow net whose language
/// equals the tree's trace semantics.
AcceptingPetriNet tree_to_net(const ProcessTree& tree);

}  // namespace lpmabs
