#include "lpmabs/csv.hpp"

#include <algorithm>
#include <unordered_map>

#include "lpmabs/errors.hpp"
#include "lpmabs/text_io.hpp"
#include "lpmabs/timestamp.hpp"

namespace lpmabs {

namespace {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<Row> tokenize(std::string_view doc, char sep) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = Row{};
  };
  for (std::size_t i = 0; i < doc.size(); ++i) {
    char c = doc[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < doc.size() && doc[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == sep) {
      end_field();
    } else if (c == '\r') {
      // swallowed; CRLF handled by '\n'
    } else if (c == '\n') {
      end_row();
      ++line;
      row.line = line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line, 1);
  if (field_started || !row.fields.empty() || !field.empty()) end_row();
  return rows;
}

}  // namespace

EventLog parse_csv(std::string_view document, const CsvColumns& columns) {
  if (document.size() >= 3 && document.substr(0, 3) == "\xEF\xBB\xBF") document.remove_prefix(3);
  auto rows = tokenize(document, columns.separator);
  if (rows.empty()) throw ConfigError("CSV document has no header row");

  const auto& header = rows.front().fields;
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name) return i;
    throw ConfigError("CSV header has no column named '" + name + "'");
  };
  const std::size_t case_idx = column(columns.case_column);
  const std::size_t act_idx = column(columns.activity_column);
  const std::optional<std::size_t> time_idx =
      columns.time_column ? std::optional(column(*columns.time_column)) : std::nullopt;

  std::vector<Trace> traces;
  std::unordered_map<std::string, std::size_t> case_index;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size())
      throw ParseError("row has " + std::to_string(row.fields.size()) + " fields, header has " +
                           std::to_string(header.size()),
                       row.line, 1);
    const auto& case_id = row.fields[case_idx];
    const auto& label = row.fields[act_idx];
    if (label.empty()) throw ParseError("empty activity", row.line, 1);
    Event e{Activity(label)};
    if (time_idx) {
      auto ts = parse_timestamp(row.fields[*time_idx]);
      if (!ts) throw ParseError("unparseable timestamp '" + row.fields[*time_idx] + "'", row.line, 1);
      e.timestamp = ts;
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == case_idx || i == act_idx || (time_idx && i == *time_idx)) continue;
      e.attributes[std::string(trim(header[i]))] = row.fields[i];
    }
    auto [it, inserted] = case_index.try_emplace(case_id, traces.size());
    if (inserted) traces.emplace_back(case_id, std::vector<Event>{});
    traces[it->second].events.push_back(std::move(e));
  }
  if (time_idx) {
    for (auto& t : traces)
      std::stable_sort(t.events.begin(), t.events.end(),
                       [](const Event& a, const Event& b) { return *a.timestamp < *b.timestamp; });
  }
  return EventLog(std::move(traces));
}

EventLog read_csv(const std::filesystem::path& path, const CsvColumns& columns) {
  return parse_csv(read_file(path), columns);
}

}  // namespace lpmabs
