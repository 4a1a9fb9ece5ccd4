#include "lpmabs/xes.hpp"

#include <expat.h>

#include <memory>
#include <ostream>
#include <sstream>

#include "lpmabs/errors.hpp"
#include "lpmabs/text_io.hpp"
#include "lpmabs/timestamp.hpp"

namespace lpmabs {

namespace {

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

bool is_attribute_element(std::string_view n) {
  return n == "string" || n == "date" || n == "int" || n == "float" || n == "boolean" ||
         n == "id" || n == "list" || n == "container";
}

struct PendingEvent {
  std::optional<std::string> activity;
  std::optional<Lifecycle> lifecycle;
  std::optional<Timestamp> timestamp;
  std::map<std::string, std::string> attributes;
};

class XesReader {
 public:
  explicit XesReader(XML_Parser parser) : parser_(parser) {}

  void start(std::string_view name, const XML_Char** atts) {
    if (failed()) return;
    ++depth_;
    if (depth_ == 1) {
      if (name != "log") fail("root element must be <log>, found <" + std::string(name) + ">");
      return;
    }
    if (attr_depth_ > 0) {  // inside an attribute element: nested meta-attributes are skipped
      ++attr_depth_;
      return;
    }
    if (name == "trace" && depth_ == 2) {
      in_trace_ = true;
      trace_ = Trace{};
      return;
    }
    if (name == "event" && in_trace_ && depth_ == 3) {
      event_ = PendingEvent{};
      return;
    }
    if (is_attribute_element(name)) {
      attr_depth_ = 1;
      std::string key, value;
      for (int i = 0; atts[i]; i += 2) {
        std::string_view k(atts[i]);
        if (k == "key") key = atts[i + 1];
        else if (k == "value") value = atts[i + 1];
      }
      if (event_ && depth_ == 4) on_event_attribute(name, key, value);
      else if (in_trace_ && depth_ == 3 && key == "concept:name") trace_.case_id = value;
    }
  }

  void end(std::string_view name) {
    if (failed()) return;
    if (attr_depth_ > 0) {
      --attr_depth_;
    } else if (name == "event" && event_ && depth_ == 3) {
      finish_event();
    } else if (name == "trace" && in_trace_ && depth_ == 2) {
      in_trace_ = false;
      traces_.push_back(std::move(trace_));
    }
    --depth_;
  }

  bool failed() const { return error_.has_value(); }
  const std::optional<ParseError>& error() const { return error_; }
  std::vector<Trace> take() { return std::move(traces_); }

 private:
  void on_event_attribute(std::string_view type, const std::string& key, const std::string& value) {
    if (key == "concept:name") {
      event_->activity = value;
    } else if (key == "lifecycle:transition" && parse_lifecycle(value)) {
      event_->lifecycle = parse_lifecycle(value);
    } else if (key == "time:timestamp" && type == "date") {
      auto ts = parse_timestamp(value);
      if (!ts) return fail("unparseable time:timestamp '" + value + "'");
      event_->timestamp = ts;
    } else if (!key.empty() && type != "list" && type != "container") {
      event_->attributes[key] = value;
    }
  }

  void finish_event() {
    if (!event_->activity || event_->activity->empty()) {
      std::string msg = "event without concept:name in trace " + std::to_string(traces_.size());
      if (!trace_.case_id.empty()) msg += " (case '" + trace_.case_id + "')";
      return fail(msg);
    }
    Event e(Activity(*event_->activity), event_->lifecycle);
    e.timestamp = event_->timestamp;
    e.attributes = std::move(event_->attributes);
    trace_.events.push_back(std::move(e));
    event_.reset();
  }

  void fail(std::string message) {
    error_.emplace(message, XML_GetCurrentLineNumber(parser_), XML_GetCurrentColumnNumber(parser_) + 1);
    XML_StopParser(parser_, XML_FALSE);
  }

  XML_Parser parser_;
  int depth_ = 0;
  int attr_depth_ = 0;
  bool in_trace_ = false;
  Trace trace_;
  std::optional<PendingEvent> event_;
  std::vector<Trace> traces_;
  std::optional<ParseError> error_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

EventLog parse_xes(std::string_view document) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");
  XesReader reader(parser.get());
  XML_SetUserData(parser.get(), &reader);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** atts) {
        static_cast<XesReader*>(ud)->start(local_name(name), atts);
      },
      [](void* ud, const XML_Char* name) { static_cast<XesReader*>(ud)->end(local_name(name)); });

  auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (reader.error()) throw *reader.error();
  if (status != XML_STATUS_OK) {
    throw ParseError(std::string("malformed XES: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                     XML_GetCurrentLineNumber(parser.get()),
                     XML_GetCurrentColumnNumber(parser.get()) + 1);
  }
  return EventLog(reader.take());
}

EventLog read_xes(const std::filesystem::path& path) { return parse_xes(read_file(path)); }

void write_xes(const EventLog& log, std::ostream& out) {
  auto attr = [&](std::string_view indent, std::string_view type, std::string_view key, std::string_view value) {
    out << indent << '<' << type << " key=\"" << xml_escape(key) << "\" value=\"" << xml_escape(value)
        << "\"/>\n";
  };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<log xes.version=\"1.0\" xes.features=\"\" xmlns=\"http://www.xes-standard.org/\">\n"
      << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      << "  <extension name=\"Lifecycle\" prefix=\"lifecycle\" uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n"
      << "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  for (const auto& trace : log.traces()) {
    out << "  <trace>\n";
    if (!trace.case_id.empty()) attr("    ", "string", "concept:name", trace.case_id);
    for (const auto& e : trace.events) {
      out << "    <event>\n";
      attr("      ", "string", "concept:name", e.activity.label());
      if (e.lifecycle) attr("      ", "string", "lifecycle:transition", to_string(*e.lifecycle));
      if (e.timestamp) attr("      ", "date", "time:timestamp", format_timestamp(*e.timestamp));
      for (const auto& [k, v] : e.attributes) {
        if (k == "concept:name" || (k == "lifecycle:transition" && e.lifecycle) ||
            (k == "time:timestamp" && e.timestamp))
          continue;
        attr("      ", "string", k, v);
      }
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
}

std::string write_xes(const EventLog& log) {
  std::ostringstream ss;
  write_xes(log, ss);
  return ss.str();
}

}  // namespace lpmabs
