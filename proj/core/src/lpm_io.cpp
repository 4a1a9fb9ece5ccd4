#include "lpmabs/lpm_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "lpmabs/errors.hpp"
#include "lpmabs/pnml.hpp"
#include "lpmabs/text_io.hpp"

namespace lpmabs {

namespace {

constexpr std::string_view kIndexFile = "ranking.txt";
constexpr std::string_view kReserved = "=,";

std::string file_name(std::size_t rank) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "lpm_%03zu.pnml", rank);
  return buf;
}

std::size_t to_count(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("expected a non-negative integer, found '" + s + "'", line);
  }
}

double to_fraction(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("expected a number, found '" + s + "'", line);
  }
}

}  // namespace

void write_lpm_directory(const std::filesystem::path& dir, std::span<const LocalProcessModel> models,
                         std::span<const double> diversity) {
  if (!diversity.empty() && diversity.size() != models.size())
    throw ContractViolation("diversity must have one entry per model");
  std::filesystem::create_directories(dir);
  std::ostringstream index;
  index << "# rank\tsupport\tdiversity\tactivities\tfile\ttree\n";
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    auto rank = m.rank ? m.rank : i + 1;
    auto file = file_name(i + 1);
    write_file(dir / file, write_pnml(m.net, m.describe()));
    std::string acts;
    for (const auto& a : m.activities) {
      if (!acts.empty()) acts += ',';
      acts += percent_encode(a.label(), kReserved);
    }
    index << "rank=" << rank << "\tsupport=" << m.support;
    if (!diversity.empty()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", diversity[i]);
      index << "\tdiversity=" << buf;
    }
    index << "\tactivities=" << acts << "\tfile=" << percent_encode(file, kReserved);
    if (m.tree) index << "\ttree=" << percent_encode(m.tree->to_string(), kReserved);
    index << '\n';
  }
  write_file(dir / kIndexFile, index.str());
}

namespace {

std::vector<StoredLpm> read_index(const std::filesystem::path& index_path) {
  auto dir = index_path.parent_path();
  std::vector<StoredLpm> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(read_file(index_path), '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::map<std::string, std::string> fields;
    for (const auto& field : split(line, '\t')) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value field, found '" + field + "'", line_no);
      fields[field.substr(0, eq)] = percent_decode(field.substr(eq + 1));
    }
    auto file = fields.find("file");
    if (file == fields.end()) throw ParseError("missing 'file' field", line_no);
    std::size_t rank = 0, support = 0;
    std::optional<double> div;
    if (auto r = fields.find("rank"); r != fields.end()) rank = to_count(r->second, line_no);
    if (auto s = fields.find("support"); s != fields.end()) support = to_count(s->second, line_no);
    if (auto d = fields.find("diversity"); d != fields.end()) div = to_fraction(d->second, line_no);
    auto model = LocalProcessModel::from_net(read_pnml(dir / file->second));
    if (auto t = fields.find("tree"); t != fields.end()) model.tree = ProcessTree::parse(t->second);
    model.rank = rank;
    model.support = support;
    out.push_back({std::move(model), div});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StoredLpm& a, const StoredLpm& b) { return a.model.rank < b.model.rank; });
  return out;
}

}  // namespace

std::vector<StoredLpm> read_lpm_directory(const std::filesystem::path& path) {
  std::vector<StoredLpm> out;
  if (std::filesystem::is_regular_file(path)) {
    if (path.filename() == kIndexFile) return read_index(path);
    out.push_back({LocalProcessModel::from_net(read_pnml(path)), std::nullopt});
    out.back().model.rank = 1;
    return out;
  }
  if (!std::filesystem::is_directory(path)) throw Error("no LPM directory or PNML file at '" + path.string() + "'");

  auto index_path = path / kIndexFile;
  if (std::filesystem::exists(index_path)) return read_index(index_path);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".pnml") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    out.push_back({LocalProcessModel::from_net(read_pnml(f)), std::nullopt});
    out.back().model.rank = out.size();
  }
  return out;
}

}  // namespace lpmabs
