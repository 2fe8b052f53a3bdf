#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpcost/simulation.hpp"

namespace dpcost {

enum class RecordFormat : std::uint8_t { Csv, Json };
enum class Metric : std::uint8_t { Precision, Recall };
enum class BoundSide : std::uint8_t { Lower, Upper };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

inline constexpr std::string_view kRecordCsvHeader =
    "project,accuracy,repetition,p_qf,qa_mode,relationship,tp,fp,tn,fn,precision,recall,lower,upper,cost_saving";

/// CSV: header plus one row per record. JSON: an array of objects with the
/// same keys. Unbounded bounds print as `inf` (a string in JSON); undefined
/// precision/recall as an empty field (null in JSON).
void emit_records(std::ostream& out, std::span<const ExperimentRecord> records, RecordFormat format);

/// Inverse of the CSV form of emit_records. Throws ParseError.
std::vector<ExperimentRecord> parse_records_csv(std::istream& in);

struct TrendBin {
  double midpoint = 0.0;
  std::optional<double> mean;  // empty when count == 0
  std::int64_t count = 0;
};

/// Mean of a boundary over equal-width metric bins on [0, 1].
struct TrendSeries {
  Metric metric = Metric::Precision;
  ModelKind kind;
  BoundSide bound = BoundSide::Lower;
  std::vector<TrendBin> bins;
  std::int64_t undefined_metric = 0;  // records excluded for an undefined metric
  std::int64_t unbounded = 0;         // records excluded for an unbounded bound
};

/// Only records of `kind` are considered. Throws InputError if n_bins < 2.
TrendSeries trend(std::span<const ExperimentRecord> records, Metric metric, ModelKind kind, BoundSide bound,
                  int n_bins = 20);

/// Midpoint of the lowest metric bin in which at least half of the records
/// of `kind` allow cost saving; empty if there is none.
std::optional<double> minimal_saving_bin(std::span<const ExperimentRecord> records, Metric metric, ModelKind kind,
                                         int n_bins = 20);

/// SVG 1.1 scatter of (metric, boundary) for both boundaries of `kind`, with
/// the binned means drawn as two polylines. Throws InputError("nothing to
/// plot") when no finite point remains.
void render_scatter(std::ostream& out, std::span<const ExperimentRecord> records, Metric metric, ModelKind kind,
                    int n_bins = 20);

}  // namespace dpcost
