#include "dpcost/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "csv.hpp"
#include "dpcost/error.hpp"
#include "json.hpp"

namespace dpcost {

std::string_view to_string(Metric metric) { return metric == Metric::Precision ? "precision" : "recall"; }

std::optional<Metric> parse_metric(std::string_view text) {
  if (text == "precision") return Metric::Precision;
  if (text == "recall") return Metric::Recall;
  return std::nullopt;
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

std::string format_fraction(const Fraction& f) { return f ? format_double(*f) : std::string(); }

std::string format_bound(const ExtendedBound& b) { return b.is_finite() ? format_double(b.value()) : "inf"; }

void check_project_id(const std::string& id) {
  if (id.find_first_of(",\r\n") != std::string::npos) {
    throw InputError("project id '" + id + "' must not contain commas or line breaks");
  }
}

}  // namespace

void emit_records(std::ostream& out, std::span<const ExperimentRecord> records, RecordFormat format) {
  if (format == RecordFormat::Csv) {
    out << kRecordCsvHeader << '\n';
    for (const auto& r : records) {
      check_project_id(r.project);
      out << r.project << ',' << format_double(r.accuracy) << ',' << r.repetition << ',' << format_double(r.p_qf)
          << ',' << to_string(r.kind.qa_mode) << ',' << to_string(r.kind.relationship) << ',' << r.cm.tp << ','
          << r.cm.fp << ',' << r.cm.tn << ',' << r.cm.fn << ',' << format_fraction(r.precision) << ','
          << format_fraction(r.recall) << ',' << format_bound(r.lower) << ',' << format_bound(r.upper) << ','
          << (r.cost_saving_possible ? "true" : "false") << '\n';
    }
    return;
  }

  using nlohmann::json;
  auto fraction = [](const Fraction& f) { return f ? json(*f) : json(nullptr); };
  auto bound = [](const ExtendedBound& b) { return b.is_finite() ? json(b.value()) : json("inf"); };
  json array = json::array();
  for (const auto& r : records) {
    array.push_back(json{
        {"project", r.project},
        {"accuracy", r.accuracy},
        {"repetition", r.repetition},
        {"p_qf", r.p_qf},
        {"qa_mode", to_string(r.kind.qa_mode)},
        {"relationship", to_string(r.kind.relationship)},
        {"tp", r.cm.tp},
        {"fp", r.cm.fp},
        {"tn", r.cm.tn},
        {"fn", r.cm.fn},
        {"precision", fraction(r.precision)},
        {"recall", fraction(r.recall)},
        {"lower", bound(r.lower)},
        {"upper", bound(r.upper)},
        {"cost_saving", r.cost_saving_possible},
    });
  }
  out << array.dump(1) << '\n';
}

namespace {

double parse_real(std::string_view field, std::size_t line, std::size_t column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, column, "'" + std::string(field) + "' is not a number");
  }
  return value;
}

std::int64_t parse_int(std::string_view field, std::size_t line, std::size_t column) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, column, "'" + std::string(field) + "' is not an integer");
  }
  return value;
}

Fraction parse_fraction(std::string_view field, std::size_t line, std::size_t column) {
  if (field.empty()) return std::nullopt;
  return parse_real(field, line, column);
}

ExtendedBound parse_bound(std::string_view field, std::size_t line, std::size_t column) {
  if (field == "inf") return ExtendedBound::unbounded();
  return ExtendedBound::finite(parse_real(field, line, column));
}

}  // namespace

std::vector<ExperimentRecord> parse_records_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.empty() || lines.front().text != kRecordCsvHeader) {
    throw ParseError(1, 0, "header must be '" + std::string(kRecordCsvHeader) + "'");
  }
  std::vector<ExperimentRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto n = lines[i].number;
    const auto f = csv::split(lines[i].text);
    if (f.size() != 15) throw ParseError(n, 0, "expected 15 fields, got " + std::to_string(f.size()));
    ExperimentRecord r;
    r.project = std::string(f[0]);
    r.accuracy = parse_real(f[1], n, 2);
    r.repetition = static_cast<int>(parse_int(f[2], n, 3));
    r.p_qf = parse_real(f[3], n, 4);
    auto mode = parse_qa_mode(f[4]);
    if (!mode) throw ParseError(n, 5, "unknown qa_mode '" + std::string(f[4]) + "'");
    auto rel = parse_relationship(f[5]);
    if (!rel) throw ParseError(n, 6, "unknown relationship '" + std::string(f[5]) + "'");
    r.kind = {*mode, *rel};
    r.cm = {parse_int(f[6], n, 7), parse_int(f[7], n, 8), parse_int(f[8], n, 9), parse_int(f[9], n, 10)};
    r.precision = parse_fraction(f[10], n, 11);
    r.recall = parse_fraction(f[11], n, 12);
    r.lower = parse_bound(f[12], n, 13);
    r.upper = parse_bound(f[13], n, 14);
    if (f[14] != "true" && f[14] != "false") throw ParseError(n, 15, "cost_saving must be true or false");
    r.cost_saving_possible = f[14] == "true";
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

Fraction metric_of(const ExperimentRecord& r, Metric metric) {
  return metric == Metric::Precision ? r.precision : r.recall;
}

std::size_t bin_of(double value, int n_bins) {
  const auto n = static_cast<double>(n_bins);
  const auto idx = static_cast<long>(std::floor(std::clamp(value, 0.0, 1.0) * n));
  return static_cast<std::size_t>(std::min<long>(idx, n_bins - 1));
}

double midpoint(std::size_t bin, int n_bins) { return (static_cast<double>(bin) + 0.5) / static_cast<double>(n_bins); }

void check_bins(int n_bins) {
  if (n_bins < 2) throw InputError("trend needs at least 2 bins");
}

}  // namespace

TrendSeries trend(std::span<const ExperimentRecord> records, Metric metric, ModelKind kind, BoundSide bound,
                  int n_bins) {
  check_bins(n_bins);
  TrendSeries series{metric, kind, bound, {}, 0, 0};
  std::vector<std::vector<double>> values(static_cast<std::size_t>(n_bins));
  for (const auto& r : records) {
    if (!(r.kind == kind)) continue;
    const auto m = metric_of(r, metric);
    if (!m) {
      ++series.undefined_metric;
      continue;
    }
    const auto& b = bound == BoundSide::Lower ? r.lower : r.upper;
    if (b.is_unbounded()) {
      ++series.unbounded;
      continue;
    }
    values[bin_of(*m, n_bins)].push_back(b.value());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& v = values[i];
    TrendBin bin{midpoint(i, n_bins), std::nullopt, static_cast<std::int64_t>(v.size())};
    if (!v.empty()) {
      // Summing in sorted order keeps the mean independent of record order.
      std::sort(v.begin(), v.end());
      double sum = 0.0;
      for (double x : v) sum += x;
      bin.mean = sum / static_cast<double>(v.size());
    }
    series.bins.push_back(bin);
  }
  return series;
}

std::optional<double> minimal_saving_bin(std::span<const ExperimentRecord> records, Metric metric, ModelKind kind,
                                         int n_bins) {
  check_bins(n_bins);
  std::vector<std::int64_t> total(static_cast<std::size_t>(n_bins), 0);
  std::vector<std::int64_t> saving(static_cast<std::size_t>(n_bins), 0);
  for (const auto& r : records) {
    if (!(r.kind == kind)) continue;
    const auto m = metric_of(r, metric);
    if (!m) continue;
    const auto b = bin_of(*m, n_bins);
    ++total[b];
    if (r.cost_saving_possible) ++saving[b];
  }
  for (std::size_t i = 0; i < total.size(); ++i) {
    if (total[i] > 0 && 2 * saving[i] >= total[i]) return midpoint(i, n_bins);
  }
  return std::nullopt;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kLowerColor = "#1f77b4";
constexpr const char* kUpperColor = "#d62728";

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct YScale {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double operator()(double v) const {
    const double plot_h = kHeight - kTop - kBottom;
    double frac = 0.0;
    if (log) {
      frac = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    } else {
      frac = (v - lo) / (hi - lo);
    }
    return kTop + plot_h * (1.0 - frac);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double t = lo; t <= hi * 1.0000001; t *= 10.0) out.push_back(t);
    } else {
      for (int k = 0; k <= 5; ++k) out.push_back(lo + (hi - lo) * k / 5.0);
    }
    return out;
  }
};

YScale choose_scale(double min_value, double max_value) {
  YScale s;
  if (min_value > 0.0 && max_value / min_value > 50.0) {
    s.log = true;
    s.lo = std::pow(10.0, std::floor(std::log10(min_value)));
    s.hi = std::pow(10.0, std::ceil(std::log10(max_value)));
    if (s.hi <= s.lo) s.hi = s.lo * 10.0;
  } else {
    s.lo = 0.0;
    s.hi = max_value > 0.0 ? max_value * 1.05 : 1.0;
  }
  return s;
}

double x_of(double metric) { return kLeft + (kWidth - kLeft - kRight) * metric; }

void polyline(std::ostream& out, const TrendSeries& series, const YScale& y, const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& bin : series.bins) {
    if (!bin.mean) continue;
    out << (first ? "" : " ") << fixed(x_of(bin.midpoint)) << ',' << fixed(y(*bin.mean));
    first = false;
  }
  out << "\"/>\n";
}

}  // namespace

void render_scatter(std::ostream& out, std::span<const ExperimentRecord> records, Metric metric, ModelKind kind,
                    int n_bins) {
  check_bins(n_bins);
  struct Point {
    double metric;
    double value;
    bool lower;
  };
  std::vector<Point> points;
  for (const auto& r : records) {
    if (!(r.kind == kind)) continue;
    const auto m = metric_of(r, metric);
    if (!m) continue;
    if (r.lower.is_finite()) points.push_back({*m, r.lower.value(), true});
    if (r.upper.is_finite()) points.push_back({*m, r.upper.value(), false});
  }
  if (points.empty()) throw InputError("nothing to plot");

  double min_value = points.front().value;
  double max_value = points.front().value;
  for (const auto& p : points) {
    min_value = std::min(min_value, p.value);
    max_value = std::max(max_value, p.value);
  }
  const auto y = choose_scale(min_value, max_value);
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<title>Cost boundaries for " << to_string(kind) << " vs. " << to_string(metric) << "</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x1) << "\" y2=\"" << fixed(y0)
      << "\"/>\n"
      << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(x0) << "\" y2=\"" << fixed(y1)
      << "\"/>\n"
      << "</g>\n";
  out << "<g fill=\"black\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double m = k / 5.0;
    out << "<text x=\"" << fixed(x_of(m)) << "\" y=\"" << fixed(y0 + 18) << "\" text-anchor=\"middle\">"
        << tick_label(m) << "</text>\n";
  }
  for (double t : y.ticks()) {
    out << "<text x=\"" << fixed(x0 - 6) << "\" y=\"" << fixed(y(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  }
  out << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"" << fixed(kHeight - 15) << "\" text-anchor=\"middle\">"
      << to_string(metric) << "</text>\n"
      << "<text transform=\"translate(20," << fixed((y0 + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << "cost ratio C" << (y.log ? " (log scale)" : "") << "</text>\n"
      << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << to_string(kind) << "</text>\n"
      << "</g>\n";

  // Legend.
  out << "<g>\n"
      << "<circle cx=\"" << fixed(x1 + 20) << "\" cy=\"" << fixed(y1 + 10) << "\" r=\"4\" fill=\"" << kLowerColor
      << "\" class=\"legend\"/>\n"
      << "<text x=\"" << fixed(x1 + 30) << "\" y=\"" << fixed(y1 + 14) << "\">lower bound</text>\n"
      << "<circle cx=\"" << fixed(x1 + 20) << "\" cy=\"" << fixed(y1 + 30) << "\" r=\"4\" fill=\"" << kUpperColor
      << "\" class=\"legend\"/>\n"
      << "<text x=\"" << fixed(x1 + 30) << "\" y=\"" << fixed(y1 + 34) << "\">upper bound</text>\n"
      << "</g>\n";

  out << "<g fill-opacity=\"0.35\">\n";
  for (const auto& p : points) {
    out << "<circle class=\"" << (p.lower ? "lower" : "upper") << "\" cx=\"" << fixed(x_of(p.metric)) << "\" cy=\""
        << fixed(y(p.value)) << "\" r=\"2\" fill=\"" << (p.lower ? kLowerColor : kUpperColor) << "\"/>\n";
  }
  out << "</g>\n";

  polyline(out, trend(records, metric, kind, BoundSide::Lower, n_bins), y, kLowerColor);
  polyline(out, trend(records, metric, kind, BoundSide::Upper, n_bins), y, kUpperColor);
  out << "</svg>\n";
}

}  // namespace dpcost
