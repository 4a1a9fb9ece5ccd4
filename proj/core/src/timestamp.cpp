#include "lpmabs/timestamp.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace lpmabs {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::optional<int> digits(std::size_t n) {
    if (pos_ + n > s_.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += n;
    return v;
  }
  /// Fractional seconds of arbitrary precision, truncated to milliseconds.
  int fraction_ms() {
    int ms = 0;
    int scale = 100;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      ms += (s_[pos_] - '0') * scale;
      scale /= 10;
      ++pos_;
    }
    return ms;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  Cursor c(text);
  auto year = c.digits(4);
  if (!year || !c.eat('-')) return std::nullopt;
  auto month = c.digits(2);
  if (!month || !c.eat('-')) return std::nullopt;
  auto day = c.digits(2);
  if (!day) return std::nullopt;

  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                     std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;

  int hh = 0, mm = 0, ss = 0, ms = 0;
  int offset_minutes = 0;
  if (c.eat('T') || c.eat(' ')) {
    auto h = c.digits(2);
    if (!h || !c.eat(':')) return std::nullopt;
    auto m = c.digits(2);
    if (!m) return std::nullopt;
    hh = *h;
    mm = *m;
    if (c.eat(':')) {
      auto s = c.digits(2);
      if (!s) return std::nullopt;
      ss = *s;
      if (c.eat('.') || c.eat(',')) ms = c.fraction_ms();
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    if (c.eat('Z')) {
    } else if (c.peek() == '+' || c.peek() == '-') {
      int sign = c.peek() == '-' ? -1 : 1;
      c.eat(c.peek());
      auto oh = c.digits(2);
      if (!oh) return std::nullopt;
      c.eat(':');
      auto om = c.digits(2);
      if (!om) return std::nullopt;
      offset_minutes = sign * (*oh * 60 + *om);
    }
  }
  if (!c.done()) return std::nullopt;

  auto tp = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} + milliseconds{ms} -
            minutes{offset_minutes};
  return time_point_cast<milliseconds>(tp);
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  auto day = floor<days>(ts);
  year_month_day ymd{day};
  auto tod = ts - day;
  auto h = duration_cast<hours>(tod);
  auto m = duration_cast<minutes>(tod - h);
  auto s = duration_cast<seconds>(tod - h - m);
  auto ms = duration_cast<milliseconds>(tod - h - m - s);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(h.count()), static_cast<int>(m.count()),
                static_cast<int>(s.count()), static_cast<int>(ms.count()));
  return buf;
}

}  // namespace lpmabs
