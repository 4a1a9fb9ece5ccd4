#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpmabs/petri_net.hpp"

namespace lpmabs {

/// Key/value annotations attached to one transition, written as attributes of a
/// `<toolspecific tool="lpmabs">` element.
using TransitionAnnotations = std::map<std::string, std::string>;

struct PnmlDocument {
  AcceptingPetriNet net;
  std::string name;
  /// One entry per transition (possibly empty).
  std::vector<TransitionAnnotations> annotations;
};

/// PNML core-model subset: places with initial markings, transitions, unweighted arcs.
///
/// Conventions:
///  - a transition is silent when its `<toolspecific tool="lpmabs" silent="true"/>` is
///    present (ProM's `activity="$invisible$"` is also recognised on input);
///  - a visible transition's label is its `<name>` text;
///  - the final marking lives in
///    `<net><toolspecific tool="lpmabs"><finalMarking><place idref="..."><text>n</text>`
///    (ProM's `<finalmarkings><marking>` block is also recognised on input).
std::string write_pnml(const AcceptingPetriNet& net, std::string_view name = "net",
                       const std::vector<TransitionAnnotations>& annotations = {});

/// Throws ParseError for malformed XML, unknown arc endpoints or weighted arcs.
PnmlDocument parse_pnml_document(std::string_view document);
AcceptingPetriNet parse_pnml(std::string_view document);
AcceptingPetriNet read_pnml(const std::filesystem::path& path);

}  // namespace lpmabs
