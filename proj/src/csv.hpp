#pragma once

// Line and field splitting shared by the CSV readers.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "dpcost/error.hpp"

namespace dpcost::csv {

struct Line {
  std::size_t number;
  std::string text;
};

/// Lines with LF/CRLF endings and a leading BOM stripped. Trailing empty
/// lines are dropped; an empty line anywhere else is a ParseError.
inline std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (n == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
    lines.push_back({n, std::move(text)});
  }
  while (!lines.empty() && lines.back().text.empty()) lines.pop_back();
  for (const auto& l : lines) {
    if (l.text.empty()) throw ParseError(l.number, 0, "empty line");
  }
  return lines;
}

inline std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = text.find(',');
    fields.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return fields;
}

}  // namespace dpcost::csv
