#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lpmabs/abstraction.hpp"
#include "lpmabs/eventlog.hpp"
#include "lpmabs/petri_net.hpp"

namespace lpmabs {

struct QualityReport {
  double fitness = 1.0;
  double precision = 1.0;
  double f_score = 1.0;
  /// Optimal alignment cost of every trace, in log order.
  std::vector<std::size_t> trace_costs;
};

/// Replaces every transition labeled with a pattern name by a fresh copy of that
/// pattern's net, entered by a silent transition from the original inputs and left by
/// a silent transition into the original outputs. Other transitions are copied as is.
AcceptingPetriNet expand_model(const AcceptingPetriNet& high_net, std::span<const ActivityPattern> patterns);

/// Trace-weighted mean of 1 - cost / (|trace| + shortest run length), with log and
/// visible model moves costing 1. Complete-lifecycle events only; an empty log scores 1.
/// Throws SearchLimitExceeded, and Error when the final marking is unreachable.
double fitness(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit = kDefaultStateLimit);

/// Escaping-edges precision over the prefix automaton of the aligned model runs.
/// States are prefixes of visible model labels weighted by trace counts; at each state
/// the enabled labels are those of visible transitions enabled in the silent closure of
/// the markings reached. An empty log scores 1.
double precision(const EventLog& log, const AcceptingPetriNet& net, std::size_t state_limit = kDefaultStateLimit);

/// Harmonic mean, 0 when both inputs are 0.
double f_score(double fitness, double precision);

/// Fitness, precision and F-score from a single alignment pass.
QualityReport evaluate(const EventLog& log, const AcceptingPetriNet& net,
                       std::size_t state_limit = kDefaultStateLimit);

/// `fitness=...\nprecision=...\nf_score=...\n` with 6 significant digits.
std::string to_key_values(const QualityReport& report);

}  // namespace lpmabs
