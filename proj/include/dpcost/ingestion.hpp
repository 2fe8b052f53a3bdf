#pragma once

// Defect-matrix and prediction CSV files.
//
// Matrix:      file,loc,<defect-id>,...      one row per file, cells 0/1
// Prediction:  file,label                    one row per file, label 0/1
//
// UTF-8, LF or CRLF line endings, no quoting; ids must not contain commas.
// Trailing empty lines are ignored.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "dpcost/defect_model.hpp"

namespace dpcost {

/// Throws ParseError carrying line and column for duplicate file or defect
/// ids, cells other than 0/1, non-integer or < 1 sizes, defect columns that
/// affect no file, and ragged rows.
Project parse_matrix(std::istream& in);
Project parse_matrix(std::string_view text);

void write_matrix(std::ostream& out, const Project& project);

Prediction parse_prediction(std::istream& in, const Project& project);
Prediction parse_prediction(std::string_view text, const Project& project);

void write_prediction(std::ostream& out, const Project& project, const Prediction& prediction);

struct SummaryStats {
  std::int64_t n_artifacts = 0;
  std::int64_t n_defective = 0;
  std::int64_t n_defects = 0;
  double mean_members = 0.0;   // 0 when there are no defects
  bool has_defects = false;    // false flags mean_members as not meaningful
  double mean_size = 0.0;      // 0 for an empty project
};

SummaryStats summarize(const Project& project);

}  // namespace dpcost
