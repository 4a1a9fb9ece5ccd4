#include "lpmabs/pnml.hpp"

#include <expat.h>

#include <charconv>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "lpmabs/errors.hpp"
#include "lpmabs/text_io.hpp"

namespace lpmabs {

namespace {

constexpr std::string_view kTool = "lpmabs";

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

struct RawPlace {
  std::string id;
  std::string name;
  std::uint32_t initial = 0;
};

struct RawTransition {
  std::string id;
  std::string name;
  bool silent = false;
  std::optional<std::string> internal_name;
  TransitionAnnotations annotations;
};

struct RawArc {
  std::string source;
  std::string target;
  std::size_t line = 0;
};

class PnmlReader {
 public:
  explicit PnmlReader(XML_Parser p) : parser_(p) {}

  void start(std::string_view name, const XML_Char** atts) {
    if (failed()) return;
    auto attr = [&](std::string_view key) -> std::optional<std::string> {
      for (int i = 0; atts[i]; i += 2)
        if (std::string_view(atts[i]) == key) return std::string(atts[i + 1]);
      return std::nullopt;
    };
    path_.emplace_back(name);
    text_.clear();

    if (name == "net" && !net_seen_) {
      net_seen_ = true;
    } else if (name == "place" && in_final()) {
      final_ref_ = attr("idref").value_or("");
      final_count_ = 1;
    } else if (name == "place") {
      places_.push_back({attr("id").value_or(""), "", 0});
      current_ = Node::place;
    } else if (name == "transition") {
      transitions_.push_back({attr("id").value_or(""), "", false, std::nullopt, {}});
      current_ = Node::transition;
    } else if (name == "arc") {
      arcs_.push_back({attr("source").value_or(""), attr("target").value_or(""),
                       static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_))});
    } else if (name == "inscription" && parent_is("arc")) {
      in_inscription_ = true;
    } else if (name == "toolspecific" && current_ == Node::transition && parent_is("transition")) {
      auto tool = attr("tool").value_or("");
      auto& t = transitions_.back();
      if (tool == "ProM" && attr("activity") == "$invisible$") t.silent = true;
      if (tool == kTool) {
        for (int i = 0; atts[i]; i += 2) {
          std::string_view k(atts[i]);
          if (k == "tool" || k == "version") continue;
          if (k == "silent") t.silent = std::string_view(atts[i + 1]) == "true";
          else if (k == "name") t.internal_name = atts[i + 1];
          else t.annotations[std::string(k)] = atts[i + 1];
        }
      }
    }
  }

  void end(std::string_view name) {
    if (failed()) return;
    if (name == "text") {
      auto text = std::string(trim(text_));
      if (path_.size() >= 3 && path_[path_.size() - 2] == "name" && path_[path_.size() - 3] == "net") net_name = text;
      else if (in("place", "name") && current_ == Node::place && !in_final()) places_.back().name = text;
      else if (in("transition", "name") && current_ == Node::transition) transitions_.back().name = text;
      else if (in("place", "initialMarking") && current_ == Node::place) places_.back().initial = count(text);
      else if (in_final() && parent_is("place")) final_count_ = count(text);
      else if (in_inscription_ && count(text) != 1) fail("weighted arcs are not supported");
    } else if (name == "place" && in_final() && final_ref_) {
      final_.emplace_back(*final_ref_, final_count_);
      final_ref_.reset();
    } else if (name == "place" || name == "transition") {
      current_ = Node::none;
    } else if (name == "inscription") {
      in_inscription_ = false;
    }
    path_.pop_back();
  }

  void text(std::string_view s) { text_ += s; }

  bool failed() const { return error_.has_value(); }
  const std::optional<ParseError>& error() const { return error_; }

  PnmlDocument build() {
    if (!net_seen_) throw ParseError("PNML document has no <net> element");
    LabeledPetriNet net;
    std::unordered_map<std::string, PlaceId> place_ids;
    std::unordered_map<std::string, TransitionId> transition_ids;
    for (auto& p : places_) {
      if (place_ids.contains(p.id)) throw ParseError("duplicate place id '" + p.id + "'");
      place_ids.emplace(p.id, net.add_place(p.name.empty() ? p.id : p.name));
    }
    PnmlDocument doc;
    doc.name = net_name;
    for (auto& t : transitions_) {
      if (transition_ids.contains(t.id) || place_ids.contains(t.id))
        throw ParseError("duplicate node id '" + t.id + "'");
      std::optional<Activity> label;
      if (!t.silent && !t.name.empty()) label = Activity(t.name);
      std::string name = t.internal_name.value_or(t.name.empty() ? t.id : t.name);
      transition_ids.emplace(t.id, net.add_transition(std::move(name), std::move(label)));
      doc.annotations.push_back(std::move(t.annotations));
    }
    for (const auto& a : arcs_) {
      auto sp = place_ids.find(a.source);
      auto tt = transition_ids.find(a.target);
      if (sp != place_ids.end() && tt != transition_ids.end()) {
        net.add_arc(sp->second, tt->second);
        continue;
      }
      auto st = transition_ids.find(a.source);
      auto tp = place_ids.find(a.target);
      if (st != transition_ids.end() && tp != place_ids.end()) {
        net.add_arc(st->second, tp->second);
        continue;
      }
      throw ParseError("arc '" + a.source + "' -> '" + a.target + "' does not connect a place and a transition",
                       a.line);
    }
    Marking init(net.place_count());
    for (const auto& p : places_) init.set(place_ids.at(p.id), p.initial);
    Marking fin(net.place_count());
    for (const auto& [ref, n] : final_) {
      auto it = place_ids.find(ref);
      if (it == place_ids.end()) throw ParseError("final marking references unknown place '" + ref + "'");
      fin.add(it->second, n);
    }
    doc.net = AcceptingPetriNet(std::move(net), std::move(init), std::move(fin));
    return doc;
  }

  std::string net_name;

 private:
  enum class Node { none, place, transition };

  bool parent_is(std::string_view n) const { return path_.size() >= 2 && path_[path_.size() - 2] == n; }

  /// True when the element stack contains `outer` somewhere above an `inner` element.
  bool in(std::string_view outer, std::string_view inner) const {
    bool seen_inner = false;
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
      if (!seen_inner && *it == inner) seen_inner = true;
      else if (seen_inner && *it == outer) return true;
    }
    return false;
  }

  bool in_final() const {
    for (const auto& p : path_)
      if (p == "finalMarking" || p == "finalmarkings") return true;
    return false;
  }

  std::uint32_t count(const std::string& text) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail("expected a token count, found '" + text + "'");
      return 0;
    }
    return v;
  }

  void fail(const std::string& message) {
    error_.emplace(message, XML_GetCurrentLineNumber(parser_), XML_GetCurrentColumnNumber(parser_) + 1);
    XML_StopParser(parser_, XML_FALSE);
  }

  XML_Parser parser_;
  std::vector<std::string> path_;
  std::string text_;
  bool net_seen_ = false;
  bool in_inscription_ = false;
  Node current_ = Node::none;
  std::vector<RawPlace> places_;
  std::vector<RawTransition> transitions_;
  std::vector<RawArc> arcs_;
  std::optional<std::string> final_ref_;
  std::uint32_t final_count_ = 1;
  std::vector<std::pair<std::string, std::uint32_t>> final_;
  std::optional<ParseError> error_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

std::string write_pnml(const AcceptingPetriNet& apn, std::string_view name,
                       const std::vector<TransitionAnnotations>& annotations) {
  const auto& net = apn.net;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<pnml>\n"
      << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n"
      << "    <name><text>" << xml_escape(name) << "</text></name>\n"
      << "    <page id=\"page1\">\n";
  for (std::uint32_t i = 0; i < net.place_count(); ++i) {
    PlaceId p{i};
    out << "      <place id=\"p" << i << "\"><name><text>" << xml_escape(net.place_name(p)) << "</text></name>";
    if (apn.initial[p] > 0) out << "<initialMarking><text>" << apn.initial[p] << "</text></initialMarking>";
    out << "</place>\n";
  }
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    const auto& t = net.transition(TransitionId{i});
    out << "      <transition id=\"t" << i << "\"><name><text>"
        << xml_escape(t.label ? t.label->label() : t.name) << "</text></name>";
    std::string attrs;
    if (t.silent()) attrs += " silent=\"true\"";
    else if (t.name != t.label->label()) attrs += " name=\"" + xml_escape(t.name) + "\"";
    if (i < annotations.size())
      for (const auto& [k, v] : annotations[i]) attrs += " " + k + "=\"" + xml_escape(v) + "\"";
    if (!attrs.empty()) out << "<toolspecific tool=\"" << kTool << "\" version=\"1.0\"" << attrs << "/>";
    if (t.silent()) out << "<toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\"/>";
    out << "</transition>\n";
  }
  std::size_t arc = 0;
  for (std::uint32_t i = 0; i < net.transition_count(); ++i) {
    const auto& t = net.transition(TransitionId{i});
    for (auto p : t.inputs)
      out << "      <arc id=\"a" << arc++ << "\" source=\"p" << p.index << "\" target=\"t" << i << "\"/>\n";
    for (auto p : t.outputs)
      out << "      <arc id=\"a" << arc++ << "\" source=\"t" << i << "\" target=\"p" << p.index << "\"/>\n";
  }
  out << "    </page>\n    <toolspecific tool=\"" << kTool << "\" version=\"1.0\">\n      <finalMarking>";
  for (auto p : apn.final_marking.support())
    out << "<place idref=\"p" << p.index << "\"><text>" << apn.final_marking[p] << "</text></place>";
  out << "</finalMarking>\n    </toolspecific>\n  </net>\n</pnml>\n";
  return out.str();
}

PnmlDocument parse_pnml_document(std::string_view document) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");
  PnmlReader reader(parser.get());
  XML_SetUserData(parser.get(), &reader);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** atts) {
        static_cast<PnmlReader*>(ud)->start(local_name(name), atts);
      },
      [](void* ud, const XML_Char* name) { static_cast<PnmlReader*>(ud)->end(local_name(name)); });
  XML_SetCharacterDataHandler(parser.get(), [](void* ud, const XML_Char* s, int len) {
    static_cast<PnmlReader*>(ud)->text(std::string_view(s, static_cast<std::size_t>(len)));
  });
  auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (reader.error()) throw *reader.error();
  if (status != XML_STATUS_OK)
    throw ParseError(std::string("malformed PNML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                     XML_GetCurrentLineNumber(parser.get()), XML_GetCurrentColumnNumber(parser.get()) + 1);
  return reader.build();
}

AcceptingPetriNet parse_pnml(std::string_view document) { return parse_pnml_document(document).net; }

AcceptingPetriNet read_pnml(const std::filesystem::path& path) { return parse_pnml(read_file(path)); }

}  // namespace lpmabs
