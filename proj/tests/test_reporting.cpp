#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "dpcost/error.hpp"
#include "dpcost/reporting.hpp"
#include "support/fixtures.hpp"

using namespace dpcost;

namespace {

constexpr ModelKind kConstNm{QaMode::Constant, Relationship::NtoM};

ExperimentRecord record(double prec, double lower, std::optional<double> upper = std::nullopt) {
  ExperimentRecord r;
  r.project = "p";
  r.accuracy = 0.5;
  r.kind = kConstNm;
  r.cm = {1, 1, 1, 1};
  r.precision = prec;
  r.recall = 0.5;
  r.lower = ExtendedBound::finite(lower);
  r.upper = upper ? ExtendedBound::finite(*upper) : ExtendedBound::unbounded();
  r.cost_saving_possible = cost_saving_possible(r.lower, r.upper);
  return r;
}

std::string csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  emit_records(out, records, RecordFormat::Csv);
  return out.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string svg(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  render_scatter(out, records, Metric::Precision, kConstNm);
  return out.str();
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
}

TEST(EmitRecords, CsvHeaderAndRow) {
  const auto text = csv({record(0.25, 1.5)});
  EXPECT_EQ(text, std::string(kRecordCsvHeader) + "\np,0.5,0,0,const,n-m,1,1,1,1,0.25,0.5,1.5,inf,true\n");
}

TEST(EmitRecords, UndefinedMetricIsEmptyField) {
  auto r = record(0.25, 1.5, 1.0);
  r.precision.reset();
  const auto text = csv({r});
  EXPECT_NE(text.find(",0,0,const,n-m,1,1,1,1,,0.5,1.5,1,false\n"), std::string::npos) << text;
}

TEST(EmitRecords, Json) {
  auto r = record(0.25, 1.5);
  r.recall.reset();
  std::ostringstream out;
  emit_records(out, std::vector{r}, RecordFormat::Json);
  const auto text = out.str();
  EXPECT_NE(text.find("\"upper\": \"inf\""), std::string::npos) << text;
  EXPECT_NE(text.find("\"recall\": null"), std::string::npos) << text;
  EXPECT_NE(text.find("\"qa_mode\": \"const\""), std::string::npos) << text;
}

TEST(EmitRecords, RejectsCommaInProjectId) {
  auto r = record(0.25, 1.5);
  r.project = "a,b";
  EXPECT_THROW(csv({r}), InputError);
}

TEST(ParseRecords, RejectsMalformedRows) {
  std::istringstream bad_header("project,accuracy\n");
  EXPECT_THROW(parse_records_csv(bad_header), ParseError);
  std::istringstream short_row(std::string(kRecordCsvHeader) + "\np,0.5\n");
  EXPECT_THROW(parse_records_csv(short_row), ParseError);
  std::istringstream bad_bool(std::string(kRecordCsvHeader) + "\np,0.5,0,0,const,n-m,1,1,1,1,0.25,0.5,1.5,inf,yes\n");
  EXPECT_THROW(parse_records_csv(bad_bool), ParseError);
}

TEST(Trend, TwoBinsByHand) {
  const std::vector records{record(0.1, 1.0), record(0.9, 3.0)};
  const auto series = trend(records, Metric::Precision, kConstNm, BoundSide::Lower, 2);
  ASSERT_EQ(series.bins.size(), 2u);
  EXPECT_DOUBLE_EQ(series.bins[0].midpoint, 0.25);
  EXPECT_DOUBLE_EQ(*series.bins[0].mean, 1.0);
  EXPECT_EQ(series.bins[0].count, 1);
  EXPECT_DOUBLE_EQ(series.bins[1].midpoint, 0.75);
  EXPECT_DOUBLE_EQ(*series.bins[1].mean, 3.0);
  EXPECT_EQ(series.bins[1].count, 1);
}

TEST(Trend, PrecisionOneLandsInLastBin) {
  const std::vector records{record(1.0, 2.0), record(1.0, 4.0), record(1.0, 6.0)};
  const auto series = trend(records, Metric::Precision, kConstNm, BoundSide::Lower);
  ASSERT_EQ(series.bins.size(), 20u);
  for (std::size_t i = 0; i + 1 < series.bins.size(); ++i) EXPECT_EQ(series.bins[i].count, 0);
  EXPECT_EQ(series.bins.back().count, 3);
  EXPECT_DOUBLE_EQ(*series.bins.back().mean, 4.0);
}

TEST(Trend, ExclusionsAreCounted) {
  auto undefined = record(0.5, 1.0, 2.0);
  undefined.precision.reset();
  auto other_kind = record(0.5, 1.0, 2.0);
  other_kind.kind = {QaMode::SizeAware, Relationship::NtoM};
  const std::vector records{record(0.5, 1.0), record(0.5, 1.0), undefined, other_kind};
  const auto series = trend(records, Metric::Precision, kConstNm, BoundSide::Upper, 4);
  EXPECT_EQ(series.unbounded, 2);
  EXPECT_EQ(series.undefined_metric, 1);
  for (const auto& bin : series.bins) {
    EXPECT_EQ(bin.count, 0);
    EXPECT_FALSE(bin.mean);
  }
  EXPECT_THROW(trend(records, Metric::Precision, kConstNm, BoundSide::Upper, 1), InputError);
}

TEST(MinimalSavingBin, MajorityRule) {
  // Bin 0: 1 of 2 saving. Bin 1 has none.
  const std::vector records{record(0.2, 5.0, 1.0), record(0.3, 1.0, 2.0), record(0.7, 5.0, 1.0)};
  EXPECT_DOUBLE_EQ(*minimal_saving_bin(records, Metric::Precision, kConstNm, 2), 0.25);
  const std::vector none{record(0.2, 5.0, 1.0)};
  EXPECT_FALSE(minimal_saving_bin(none, Metric::Precision, kConstNm, 2));
}

TEST(RenderScatter, ElementCounts) {
  const auto text = svg({record(0.2, 1.0, 3.0), record(0.5, 1.5, 2.5), record(0.8, 1.2, 2.0)});
  EXPECT_EQ(count(text, "<circle class=\"lower\""), 3u);
  EXPECT_EQ(count(text, "<circle class=\"upper\""), 3u);
  EXPECT_EQ(count(text, "class=\"legend\""), 2u);
  EXPECT_EQ(count(text, "<polyline"), 2u);
  EXPECT_EQ(text.rfind("<?xml", 0), 0u);
  EXPECT_NE(text.find(">precision</text>"), std::string::npos);
  EXPECT_NE(text.find("cost ratio C"), std::string::npos);
}

TEST(RenderScatter, DeterministicAndNothingToPlot) {
  const std::vector records{record(0.2, 1.0, 300.0), record(0.5, 1.5, 2.5)};
  EXPECT_EQ(svg(records), svg(records));
  EXPECT_NE(svg(records).find("log scale"), std::string::npos);
  try {
    svg({});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "nothing to plot");
  }
  auto undefined = record(0.5, 1.0, 2.0);
  undefined.precision.reset();
  EXPECT_THROW(svg({undefined}), InputError);
}

// Properties over simulated records.

class ReportingProperties : public ::testing::Test {
 protected:
  std::vector<ExperimentRecord> simulated(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const auto p = test::random_project(gen);
    GridConfig config;
    config.repetitions = 3;
    config.p_qf_values = {0.0, 0.3};
    config.seed = seed;
    return run_grid(p, config, "proj-" + std::to_string(seed));
  }
};

TEST_F(ReportingProperties, CsvRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto records = simulated(seed);
    std::istringstream in(csv(records));
    EXPECT_EQ(parse_records_csv(in), records);
  }
}

TEST_F(ReportingProperties, TrendIsPermutationInvariant) {
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto records = simulated(seed);
    for (const auto& kind : all_model_kinds()) {
      for (auto metric : {Metric::Precision, Metric::Recall}) {
        const auto a = trend(records, metric, kind, BoundSide::Lower);
        std::shuffle(records.begin(), records.end(), gen);
        const auto b = trend(records, metric, kind, BoundSide::Lower);
        ASSERT_EQ(a.bins.size(), b.bins.size());
        for (std::size_t i = 0; i < a.bins.size(); ++i) {
          EXPECT_EQ(a.bins[i].count, b.bins[i].count);
          EXPECT_EQ(a.bins[i].mean, b.bins[i].mean);
        }
        EXPECT_EQ(a.unbounded, b.unbounded);
        EXPECT_EQ(a.undefined_metric, b.undefined_metric);
      }
    }
  }
}

TEST_F(ReportingProperties, TrendCountsPartitionRecords) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto records = simulated(seed);
    for (const auto& kind : all_model_kinds()) {
      const auto n = std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.kind == kind; });
      for (auto side : {BoundSide::Lower, BoundSide::Upper}) {
        const auto s = trend(records, Metric::Recall, kind, side, 7);
        std::int64_t total = s.undefined_metric + s.unbounded;
        for (const auto& bin : s.bins) total += bin.count;
        EXPECT_EQ(total, n);
      }
    }
  }
}
