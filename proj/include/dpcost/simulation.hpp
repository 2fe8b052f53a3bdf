#pragma once

// Simulated predictors over an accuracy grid: for every (accuracy,
// repetition) cell each artifact keeps its true label with probability
// `accuracy` and is flipped otherwise; the resulting labeling is scored
// under every requested p_qf and cost model.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dpcost/boundary.hpp"
#include "dpcost/cost_engine.hpp"
#include "dpcost/defect_model.hpp"

namespace dpcost {

/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_accuracies();

/// Evenly spaced accuracies from `first` to `last` inclusive, rounded to
/// nine decimals so that e.g. 0.05 + 2 * 0.05 prints as 0.15.
std::vector<double> accuracy_range(double first, double last, double step);

struct GridConfig {
  std::vector<double> accuracies = default_accuracies();
  int repetitions = 100;
  std::vector<double> p_qf_values{0.0, 0.5};
  std::uint64_t seed = 0;
  std::vector<ModelKind> model_kinds{all_model_kinds().begin(), all_model_kinds().end()};

  void validate() const;
  std::size_t record_count() const;
};

struct ExperimentRecord {
  std::string project;
  double accuracy = 0.0;
  int repetition = 0;
  double p_qf = 0.0;
  ModelKind kind;
  ConfusionMatrix cm;
  Fraction precision;
  Fraction recall;
  ExtendedBound lower = ExtendedBound::unbounded();
  ExtendedBound upper = ExtendedBound::unbounded();
  bool cost_saving_possible = false;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

Prediction simulate_prediction(const Project& project, double accuracy, std::uint64_t cell_seed);

/// Runs the full grid on an NtoM project. `threads` = 0 uses the hardware
/// concurrency. Output is sorted by (accuracy, repetition, p_qf, kind) and
/// does not depend on the thread count.
std::vector<ExperimentRecord> run_grid(const Project& project, const GridConfig& config,
                                       std::string_view project_id = {}, unsigned threads = 0);

}  // namespace dpcost
