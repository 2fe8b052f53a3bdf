#include "dpcost/ingestion.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

#include "csv.hpp"
#include "dpcost/error.hpp"

namespace dpcost {

namespace {

using csv::read_lines;
using csv::split;

bool parse_bit(std::string_view field, bool& bit) {
  if (field == "0") {
    bit = false;
    return true;
  }
  if (field == "1") {
    bit = true;
    return true;
  }
  return false;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

Project parse_matrix(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, 0, "missing header 'file,loc,...'");

  const auto header = split(lines.front().text);
  if (header.size() < 2 || header[0] != "file" || header[1] != "loc") {
    throw ParseError(1, 0, "header must start with 'file,loc'");
  }
  std::vector<DefectSpec> defects;
  std::unordered_set<std::string_view> defect_ids;
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c].empty()) throw ParseError(1, c + 1, "empty defect id");
    if (!defect_ids.insert(header[c]).second) throw ParseError(1, c + 1, "duplicate defect id " + quoted(header[c]));
    defects.push_back({std::string(header[c]), {}});
  }

  std::vector<Artifact> artifacts;
  std::unordered_set<std::string> file_ids;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& line = lines[r];
    const auto fields = split(line.text);
    if (fields.size() != header.size()) {
      throw ParseError(line.number, 0,
                       "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line.number, 1, "empty file id");
    if (!file_ids.emplace(fields[0]).second) throw ParseError(line.number, 1, "duplicate file " + quoted(fields[0]));

    std::int64_t size = 0;
    const auto* first = fields[1].data();
    const auto* last = first + fields[1].size();
    auto [ptr, ec] = std::from_chars(first, last, size);
    if (fields[1].empty() || ec != std::errc() || ptr != last) {
      throw ParseError(line.number, 2, "loc " + quoted(fields[1]) + " is not an integer");
    }
    if (size < 1) throw ParseError(line.number, 2, "loc must be at least 1, got " + std::to_string(size));
    artifacts.push_back({std::string(fields[0]), size});

    for (std::size_t c = 2; c < fields.size(); ++c) {
      bool bit = false;
      if (!parse_bit(fields[c], bit)) {
        throw ParseError(line.number, c + 1, "cell " + quoted(fields[c]) + " for defect " + quoted(header[c]) +
                                                 " must be 0 or 1");
      }
      if (bit) defects[c - 2].members.push_back(artifacts.back().id);
    }
  }

  for (std::size_t k = 0; k < defects.size(); ++k) {
    if (defects[k].members.empty()) throw ParseError(1, k + 3, "defect " + quoted(defects[k].id) + " affects no file");
  }
  return Project(std::move(artifacts), std::move(defects), Relationship::NtoM);
}

Project parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

void write_matrix(std::ostream& out, const Project& project) {
  const auto& artifacts = project.artifacts();
  const auto& defects = project.defects();
  out << "file,loc";
  for (const auto& d : defects) out << ',' << d.id;
  out << '\n';
  std::vector<std::vector<char>> grid(artifacts.size(), std::vector<char>(defects.size(), '0'));
  for (std::size_t k = 0; k < defects.size(); ++k) {
    for (auto m : defects[k].members) grid[m][k] = '1';
  }
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    out << artifacts[i].id << ',' << artifacts[i].size;
    for (char c : grid[i]) out << ',' << c;
    out << '\n';
  }
}

Prediction parse_prediction(std::istream& in, const Project& project) {
  const auto lines = read_lines(in);
  if (lines.empty() || lines.front().text != "file,label") throw ParseError(1, 0, "header must be 'file,label'");

  std::map<std::string, Label> labels;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& line = lines[r];
    const auto fields = split(line.text);
    if (fields.size() != 2) throw ParseError(line.number, 0, "expected 2 fields, got " + std::to_string(fields.size()));
    if (!project.index_of(fields[0])) throw ParseError(line.number, 1, "unknown artifact " + std::string(fields[0]));
    bool bit = false;
    if (!parse_bit(fields[1], bit)) throw ParseError(line.number, 2, "label " + quoted(fields[1]) + " must be 0 or 1");
    if (!labels.emplace(std::string(fields[0]), bit ? Label::Defective : Label::Clean).second) {
      throw ParseError(line.number, 1, "duplicate row for " + std::string(fields[0]));
    }
  }
  for (const auto& a : project.artifacts()) {
    if (!labels.contains(a.id)) {
      throw ParseError(lines.back().number, 0, "unlabeled artifact " + a.id);
    }
  }
  return Prediction::from_map(project, labels);
}

Prediction parse_prediction(std::string_view text, const Project& project) {
  std::istringstream in{std::string(text)};
  return parse_prediction(in, project);
}

void write_prediction(std::ostream& out, const Project& project, const Prediction& prediction) {
  out << "file,label\n";
  for (std::size_t i = 0; i < project.artifacts().size(); ++i) {
    out << project.artifacts()[i].id << ',' << (prediction.flagged(i) ? '1' : '0') << '\n';
  }
}

SummaryStats summarize(const Project& project) {
  SummaryStats s;
  s.n_artifacts = static_cast<std::int64_t>(project.artifacts().size());
  s.n_defects = static_cast<std::int64_t>(project.defects().size());
  for (auto label : true_labels(project)) s.n_defective += label == Label::Defective ? 1 : 0;
  if (s.n_defects > 0) {
    std::int64_t incidences = 0;
    for (const auto& d : project.defects()) incidences += static_cast<std::int64_t>(d.cardinality());
    s.mean_members = static_cast<double>(incidences) / static_cast<double>(s.n_defects);
    s.has_defects = true;
  }
  if (s.n_artifacts > 0) {
    std::int64_t loc = 0;
    for (const auto& a : project.artifacts()) loc += a.size;
    s.mean_size = static_cast<double>(loc) / static_cast<double>(s.n_artifacts);
  }
  return s;
}

}  // namespace dpcost
