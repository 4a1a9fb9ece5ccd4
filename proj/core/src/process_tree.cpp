#include "lpmabs/process_tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "lpmabs/errors.hpp"

namespace lpmabs {

namespace {

bool is_plain_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' || c == '-' ||
         c == '+' || c == '/' || c == '#' || c == '@' || c == '&' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_keyword(std::string_view s) {
  return s == "seq" || s == "xor" || s == "and" || s == "loop" || s == "tau" || s == "X" ||
         s == "->" || s == "+" || s == "*";
}

std::string quote_label(const std::string& label) {
  bool plain = !label.empty() && !is_keyword(label) &&
               std::all_of(label.begin(), label.end(), is_plain_char) && label.front() != '-' &&
               label.front() != '+';
  if (plain) return label;
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}

  ProcessTree parse_all() {
    auto t = parse_node();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("process tree: " + msg, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string quoted() {
    const char q = s_[pos_++];
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != q) {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    if (pos_ >= s_.size()) fail("unterminated quoted label");
    ++pos_;
    if (out.empty()) fail("empty label");
    return out;
  }

  ProcessTree parse_node() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '"' || s_[pos_] == '\'') return ProcessTree::leaf(quoted());

    std::size_t start = pos_;
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
    } else {
      while (pos_ < s_.size() && is_plain_char(s_[pos_])) ++pos_;
      if (pos_ == start && (s_[pos_] == '*')) ++pos_;
    }
    if (pos_ == start) fail("expected a label or operator");
    std::string word(s_.substr(start, pos_ - start));

    if (peek('(')) {
      ProcessTree::Kind op;
      if (word == "seq" || word == "->") op = ProcessTree::Kind::sequence;
      else if (word == "xor" || word == "X") op = ProcessTree::Kind::choice;
      else if (word == "and" || word == "+") op = ProcessTree::Kind::parallel;
      else if (word == "loop" || word == "*") op = ProcessTree::Kind::loop;
      else fail("unknown operator '" + word + "'");
      ++pos_;
      std::vector<ProcessTree> children;
      children.push_back(parse_node());
      while (peek(',')) {
        ++pos_;
        children.push_back(parse_node());
      }
      expect(')');
      if (op == ProcessTree::Kind::loop && children.size() != 2) fail("loop takes exactly two children");
      return ProcessTree::make(op, std::move(children));
    }
    if (word == "tau") return ProcessTree::tau();
    return ProcessTree::leaf(word);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct NetBuilder {
  LabeledPetriNet net;
  std::map<std::string, int> names;
  int tau_counter = 0;
  int place_counter = 0;

  PlaceId place() { return net.add_place("p" + std::to_string(place_counter++)); }

  TransitionId silent() { return net.add_transition("tau_" + std::to_string(++tau_counter)); }

  TransitionId visible(const Activity& a) {
    int n = ++names[a.label()];
    std::string name = n == 1 ? a.label() : a.label() + "#" + std::to_string(n);
    return net.add_transition(name, a);
  }

  void connect(PlaceId in, TransitionId t, PlaceId out) {
    net.add_arc(in, t);
    net.add_arc(t, out);
  }

  void build(const ProcessTree& node, PlaceId in, PlaceId out) {
    using K = ProcessTree::Kind;
    switch (node.kind()) {
      case K::activity:
        connect(in, visible(node.activity()), out);
        break;
      case K::tau:
        connect(in, silent(), out);
        break;
      case K::sequence: {
        PlaceId current = in;
        auto kids = node.children();
        for (std::size_t i = 0; i < kids.size(); ++i) {
          PlaceId next = i + 1 == kids.size() ? out : place();
          build(kids[i], current, next);
          current = next;
        }
        break;
      }
      case K::choice:
        for (const auto& c : node.children()) build(c, in, out);
        break;
      case K::parallel: {
        auto split = silent();
        auto join = silent();
        net.add_arc(in, split);
        net.add_arc(join, out);
        for (const auto& c : node.children()) {
          auto ci = place();
          auto co = place();
          net.add_arc(split, ci);
          net.add_arc(co, join);
          build(c, ci, co);
        }
        break;
      }
      case K::loop: {
        auto enter = silent();
        auto body_in = place();
        auto body_out = place();
        connect(in, enter, body_in);
        build(node.children()[0], body_in, body_out);
        build(node.children()[1], body_out, body_in);
        auto exit = silent();
        connect(body_out, exit, out);
        break;
      }
    }
  }
};

}  // namespace

std::string_view operator_name(ProcessTree::Kind kind) {
  switch (kind) {
    case ProcessTree::Kind::activity: return "activity";
    case ProcessTree::Kind::tau: return "tau";
    case ProcessTree::Kind::sequence: return "seq";
    case ProcessTree::Kind::choice: return "xor";
    case ProcessTree::Kind::parallel: return "and";
    case ProcessTree::Kind::loop: return "loop";
  }
  return "?";
}

ProcessTree ProcessTree::leaf(Activity a) { return ProcessTree(Kind::activity, std::move(a), {}); }

ProcessTree ProcessTree::tau() { return ProcessTree(Kind::tau, std::nullopt, {}); }

ProcessTree ProcessTree::make(Kind op, std::vector<ProcessTree> children) {
  if (op == Kind::activity || op == Kind::tau) throw ContractViolation("make() needs an operator kind");
  if (children.empty()) throw ContractViolation("operator node needs at least one child");
  if (op == Kind::loop && children.size() != 2)
    throw ContractViolation("loop node needs exactly a body and a redo child");
  return ProcessTree(op, std::nullopt, std::move(children));
}

ProcessTree ProcessTree::sequence(std::vector<ProcessTree> c) { return make(Kind::sequence, std::move(c)); }
ProcessTree ProcessTree::choice(std::vector<ProcessTree> c) { return make(Kind::choice, std::move(c)); }
ProcessTree ProcessTree::parallel(std::vector<ProcessTree> c) { return make(Kind::parallel, std::move(c)); }
ProcessTree ProcessTree::loop(ProcessTree body, ProcessTree redo) {
  std::vector<ProcessTree> c;
  c.push_back(std::move(body));
  c.push_back(std::move(redo));
  return make(Kind::loop, std::move(c));
}

ProcessTree ProcessTree::parse(std::string_view text) { return TreeParser(text).parse_all(); }

const Activity& ProcessTree::activity() const {
  if (kind_ != Kind::activity) throw ContractViolation("not an activity leaf");
  return *activity_;
}

std::size_t ProcessTree::node_count() const noexcept {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

ActivitySet ProcessTree::activities() const {
  ActivitySet out;
  for (auto& a : activity_leaves()) out.insert(a);
  return out;
}

std::vector<Activity> ProcessTree::activity_leaves() const {
  std::vector<Activity> out;
  if (kind_ == Kind::activity) out.push_back(*activity_);
  for (const auto& c : children_) {
    auto sub = c.activity_leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

ProcessTree ProcessTree::canonical() const {
  if (is_leaf()) return *this;
  std::vector<ProcessTree> kids;
  for (const auto& c : children_) {
    auto cc = c.canonical();
    const bool flatten = kind_ != Kind::loop && cc.kind_ == kind_;
    if (flatten) {
      for (auto& g : cc.children_) kids.push_back(std::move(g));
    } else {
      kids.push_back(std::move(cc));
    }
  }
  if (kind_ != Kind::loop && kids.size() == 1) return std::move(kids.front());
  if (kind_ == Kind::choice || kind_ == Kind::parallel) {
    std::vector<std::pair<std::pair<ActivitySet, std::string>, ProcessTree>> keyed;
    for (auto& k : kids) keyed.push_back({{k.activities(), k.to_string()}, std::move(k)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    kids.clear();
    for (auto& [key, k] : keyed) kids.push_back(std::move(k));
  }
  return ProcessTree(kind_, std::nullopt, std::move(kids));
}

std::string ProcessTree::to_string() const {
  if (kind_ == Kind::activity) return quote_label(activity_->label());
  if (kind_ == Kind::tau) return "tau";
  std::string s(operator_name(kind_));
  s += '(';
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i) s += ',';
    s += children_[i].to_string();
  }
  return s + ')';
}

AcceptingPetriNet tree_to_net(const ProcessTree& tree) {
  NetBuilder b;
  auto source = b.place();
  auto sink = b.place();
  b.build(tree, source, sink);
  const auto n = b.net.place_count();
  Marking init(n, {{source, 1}});
  Marking fin(n, {{sink, 1}});
  return AcceptingPetriNet(std::move(b.net), std::move(init), std::move(fin));
}

}  // namespace lpmabs
