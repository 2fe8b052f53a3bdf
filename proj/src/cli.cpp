#include "dpcost/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dpcost/boundary.hpp"
#include "dpcost/cost_engine.hpp"
#include "dpcost/error.hpp"
#include "dpcost/ingestion.hpp"
#include "dpcost/reporting.hpp"
#include "dpcost/simulation.hpp"
#include "dpcost/synthetic.hpp"

namespace dpcost {

namespace {

/// A flag value that parsed but names nothing we know.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file that could not be opened or written.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Project load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  try {
    return parse_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + std::string(e.what()));
  }
}

Prediction load_prediction(const std::string& path, const Project& project) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  return parse_prediction(in, project);
}

ModelKind kind_from(const std::string& text) {
  auto kind = parse_model_kind(text);
  if (!kind) throw UsageError("unknown cost model '" + text + "' (expected const|size / n-m|1-m|1-1, e.g. const/n-m)");
  return *kind;
}

/// Writes through `write` to `path`, or to `out` when path is empty or "-".
template <typename Write>
void write_to(const std::string& path, std::ostream& out, Write&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FileError("cannot write " + path);
  write(file);
  if (!file) throw FileError("failed writing " + path);
}

std::string fmt_bound(const ExtendedBound& b) { return b.is_finite() ? format_double(b.value()) : "inf"; }

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct CostArgs {
  std::string matrix;
  std::string predictions;
  std::string kind;
  double c_ratio = 1.0;
  double p_qf = 0.0;
  double c_init = 0.0;
  double c_exec = 0.0;
};

void add_model_flags(CLI::App& cmd, CostArgs& a, bool with_ratio) {
  cmd.add_option("--matrix", a.matrix, "Defect matrix CSV")->required();
  cmd.add_option("--predictions", a.predictions, "Prediction CSV (file,label)")->required();
  cmd.add_option("--kind", a.kind, "Cost model: const|size / n-m|1-m|1-1")->required();
  if (with_ratio) cmd.add_option("--c-ratio", a.c_ratio, "Defect cost / QA cost unit")->required();
  cmd.add_option("--p-qf", a.p_qf, "Probability that QA misses a defect in one file")->required();
  cmd.add_option("--c-init", a.c_init, "One-time cost of introducing the model");
  cmd.add_option("--c-exec", a.c_exec, "Continuous cost of running the model");
}

struct Evaluated {
  Project view;
  OutcomeSummary outcome;
  CostParams params;
  ModelKind kind;
};

Evaluated evaluate(const CostArgs& a) {
  const auto kind = kind_from(a.kind);
  const auto project = load_matrix(a.matrix);
  const auto prediction = load_prediction(a.predictions, project);
  CostParams params{a.c_ratio, a.p_qf, a.c_init, a.c_exec, kind.qa_mode};
  params.validate();
  auto view = project_view(project, kind.relationship);
  auto outcome = classify(view, prediction);
  return {std::move(view), std::move(outcome), params, kind};
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const auto project = load_matrix(path);
  const auto stats = summarize(project);
  const auto one_to_m = project_view(project, Relationship::OneToM);
  const auto one_to_one = project_view(project, Relationship::OneToOne);
  out << path << ": ok\n"
      << "  artifacts: " << stats.n_artifacts << " (" << stats.n_defective << " defective)\n"
      << "  defects: " << stats.n_defects << " n-m, " << one_to_m.defects().size() << " 1-m, "
      << one_to_one.defects().size() << " 1-1\n";
  return kExitOk;
}

int cmd_summarize(const std::string& path, std::string name, std::ostream& out) {
  const auto project = load_matrix(path);
  if (name.empty()) name = std::filesystem::path(path).stem().string();
  const auto s = summarize(project);
  out << "project,n_artifacts,n_defective,n_defects,mean_members,mean_loc\n"
      << name << ',' << s.n_artifacts << ',' << s.n_defective << ',' << s.n_defects << ','
      << (s.has_defects ? two_decimals(s.mean_members) : std::string("NA")) << ',' << two_decimals(s.mean_size)
      << '\n';
  return kExitOk;
}

int cmd_cost(const CostArgs& a, std::ostream& out) {
  const auto e = evaluate(a);
  const double cost = cost_init(e.view, e.outcome, e.params, e.kind);
  const double no_qa = cost_random(e.view, 0.0, e.params);
  const double all_qa = cost_random(e.view, 1.0, e.params);
  out << "model=" << to_string(e.kind) << '\n'
      << "cost=" << format_double(cost) << '\n'
      << "cost_no_qa=" << format_double(no_qa) << '\n'
      << "cost_all_qa=" << format_double(all_qa) << '\n'
      << "profit_vs_no_qa=" << format_double(no_qa - cost) << '\n'
      << "profit_vs_all_qa=" << format_double(all_qa - cost) << '\n';
  return kExitOk;
}

int cmd_boundaries(const CostArgs& a, std::ostream& out) {
  const auto e = evaluate(a);
  const auto interval = boundary_interval(e.view, e.outcome, e.params, e.kind);
  out << "lower=" << fmt_bound(interval.lower) << " upper=" << fmt_bound(interval.upper)
      << " saving=" << (interval.cost_saving_possible ? "true" : "false") << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string matrix;
  std::uint64_t seed = 0;
  double acc_min = 0.05;
  double acc_max = 0.95;
  double acc_step = 0.05;
  int reps = 100;
  std::vector<double> p_qf{0.0, 0.5};
  std::vector<std::string> kinds;
  std::string out;
  std::string project;
  std::string format = "csv";
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  GridConfig config;
  config.accuracies = accuracy_range(a.acc_min, a.acc_max, a.acc_step);
  config.repetitions = a.reps;
  config.p_qf_values = a.p_qf;
  config.seed = a.seed;
  if (!a.kinds.empty()) {
    config.model_kinds.clear();
    for (const auto& k : a.kinds) config.model_kinds.push_back(kind_from(k));
  }
  const auto project = load_matrix(a.matrix);
  const auto name = a.project.empty() ? std::filesystem::path(a.matrix).stem().string() : a.project;
  const auto records = run_grid(project, config, name, a.threads);
  const auto format = a.format == "json" ? RecordFormat::Json : RecordFormat::Csv;
  write_to(a.out, out, [&](std::ostream& o) { emit_records(o, records, format); });
  return kExitOk;
}

struct PlotArgs {
  std::string in;
  std::string metric;
  std::string kind;
  std::string out;
  std::optional<double> p_qf;
  int bins = 20;
};

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  const auto metric = parse_metric(a.metric);
  if (!metric) throw UsageError("unknown metric '" + a.metric + "' (expected precision or recall)");
  const auto kind = kind_from(a.kind);
  std::ifstream in(a.in, std::ios::binary);
  if (!in) throw FileError("cannot open " + a.in);
  auto records = parse_records_csv(in);
  if (a.p_qf) {
    std::erase_if(records, [&](const ExperimentRecord& r) { return r.p_qf != *a.p_qf; });
  }
  std::ostringstream svg;
  render_scatter(svg, records, *metric, kind, a.bins);
  write_to(a.out, out, [&](std::ostream& o) { o << svg.str(); });

  const auto first = minimal_saving_bin(records, *metric, kind, a.bins);
  if (!a.out.empty() && a.out != "-") {
    out << "min_" << to_string(*metric) << "_bin_for_saving=" << (first ? format_double(*first) : "none") << '\n';
  }
  return kExitOk;
}

int cmd_synth(const std::string& profile_name, std::uint64_t seed, const std::string& path, bool list,
              std::ostream& out) {
  if (list) {
    for (const auto& p : reference_profiles()) out << p.name << '\n';
    return kExitOk;
  }
  const auto profile = find_profile(profile_name);
  if (!profile) throw UsageError("unknown profile '" + profile_name + "' (see synth --list)");
  const auto project = synthesize_project(*profile, seed);
  write_to(path, out, [&](std::ostream& o) { write_matrix(o, project); });
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Costs and cost-saving boundaries of defect prediction models", "dpcost"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse a defect matrix and report its invariants");
  validate->add_option("matrix", validate_path, "Defect matrix CSV")->required();

  std::string summarize_path;
  std::string summarize_name;
  auto* summarize_cmd = app.add_subcommand("summarize", "Print project statistics");
  summarize_cmd->add_option("matrix", summarize_path, "Defect matrix CSV")->required();
  summarize_cmd->add_option("--name", summarize_name, "Project name (default: file stem)");

  CostArgs cost_args;
  auto* cost = app.add_subcommand("cost", "Cost of acting on a prediction and profit vs. both trivial baselines");
  add_model_flags(*cost, cost_args, true);

  CostArgs bound_args;
  auto* boundaries = app.add_subcommand("boundaries", "Cost-ratio interval in which a prediction saves costs");
  add_model_flags(*boundaries, bound_args, false);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the simulated-predictor grid and write records");
  simulate->add_option("--matrix", sim.matrix, "Defect matrix CSV")->required();
  simulate->add_option("--seed", sim.seed, "Master seed")->required();
  simulate->add_option("--acc-min", sim.acc_min, "Smallest accuracy")->capture_default_str();
  simulate->add_option("--acc-max", sim.acc_max, "Largest accuracy")->capture_default_str();
  simulate->add_option("--acc-step", sim.acc_step, "Accuracy step")->capture_default_str();
  simulate->add_option("--reps", sim.reps, "Repetitions per accuracy")->capture_default_str();
  simulate->add_option("--p-qf", sim.p_qf, "QA failure probabilities")->capture_default_str();
  simulate->add_option("--kind", sim.kinds, "Restrict to these cost models (default: all six)");
  simulate->add_option("--out", sim.out, "Output file (default: stdout)");
  simulate->add_option("--project", sim.project, "Project id written to records (default: matrix file stem)");
  simulate->add_option("--format", sim.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

  PlotArgs plot_args;
  double plot_pqf = 0.0;
  auto* plot = app.add_subcommand("plot", "Render records as an SVG scatter with binned trend lines");
  plot->add_option("--in", plot_args.in, "Record CSV from simulate")->required();
  plot->add_option("--metric", plot_args.metric, "precision or recall")->required();
  plot->add_option("--kind", plot_args.kind, "Cost model, e.g. const/n-m")->required();
  plot->add_option("--out", plot_args.out, "SVG output (default: stdout)");
  auto* plot_pqf_opt = plot->add_option("--p-qf", plot_pqf, "Only records with this p_qf");
  plot->add_option("--bins", plot_args.bins, "Number of trend bins")->check(CLI::Range(2, 1000));

  std::string synth_profile;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  bool synth_list = false;
  auto* synth = app.add_subcommand("synth", "Write a synthetic defect matrix matching a reference profile");
  synth->add_option("--profile", synth_profile, "Reference profile name");
  synth->add_option("--seed", synth_seed, "Seed");
  synth->add_option("--out", synth_out, "Output file (default: stdout)");
  synth->add_flag("--list", synth_list, "List the available profiles");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_path, out);
    if (*summarize_cmd) return cmd_summarize(summarize_path, summarize_name, out);
    if (*cost) return cmd_cost(cost_args, out);
    if (*boundaries) return cmd_boundaries(bound_args, out);
    if (*simulate) return cmd_simulate(sim, out);
    if (*plot) {
      if (plot_pqf_opt->count() > 0) plot_args.p_qf = plot_pqf;
      return cmd_plot(plot_args, out);
    }
    if (*synth) {
      if (!synth_list && synth_profile.empty()) throw UsageError("synth needs --profile or --list");
      return cmd_synth(synth_profile, synth_seed, synth_out, synth_list, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace dpcost
