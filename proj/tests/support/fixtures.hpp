#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "lpmabs/eventlog.hpp"
#include "lpmabs/lpm.hpp"
#include "lpmabs/petri_net.hpp"
#include "lpmabs/process_tree.hpp"

namespace lpmabs {

/// Readable GoogleTest output for activities and words.
void PrintTo(const Activity& a, std::ostream* os);

}  // namespace lpmabs

namespace lpmabs::testing {

/// Hand-built net with language {AC} ∪ {BⁿC : n ≥ 1}:
/// A: p0→p3, τ1: p0→p1, B: p1→p2, τ2: p2→p1, τ3: p2→p3, C: p3→p4.
AcceptingPetriNet fixture_n1();

/// σ = ⟨A,B,X,B,C,C,A,B,C,B,B,X,A,C⟩.
Trace worked_example_trace();

struct NamedNet {
  std::string name;
  AcceptingPetriNet net;
};

/// Hand-built and tree-derived nets covering sequence, choice, loops, concurrency,
/// silent transitions, self-loops, non-workflow shapes and an empty language.
std::vector<NamedNet> fixture_nets();

/// Every process tree over `alphabet` with at most `max_activities` distinct activity
/// leaves and at most `max_nodes` nodes, canonical and deduplicated.
std::vector<ProcessTree> enumerate_trees(const std::vector<std::string>& alphabet, std::size_t max_activities,
                                         std::size_t max_nodes);

/// All words over `alphabet` with length exactly `len`.
std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t len);

/// Largest number of events of `projected` covered by pairwise disjoint contiguous
/// segments whose words lie in `language`, by exhaustive enumeration of all ways to
/// cut the word into pieces.
std::size_t brute_force_gamma_size(const Word& projected, const std::set<Word>& language);

/// One activity per character: chars("abc") == ⟨a,b,c⟩.
Word chars(std::string_view letters);

/// Activity set from single-character labels.
ActivitySet char_set(std::string_view letters);

using Rng = std::mt19937_64;

Word random_word(Rng& rng, const std::vector<std::string>& alphabet, std::size_t max_len);

}  // namespace lpmabs::testing

#include "lpmabs/generator.hpp"

namespace lpmabs::testing {

/// The planted-pattern log used by the end-to-end checks: seq(a,b,c) and and(d,e),
/// 30% injected noise, fixed seed.
GeneratorSpec planted_pattern_spec();

}  // namespace lpmabs::testing
