#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dpcost/defect_model.hpp"

namespace dpcost {

enum class QaMode : std::uint8_t {
  Constant,   // qa(s) = 1
  SizeAware,  // qa(s) = size(s)
};

std::string_view to_string(QaMode mode);
std::optional<QaMode> parse_qa_mode(std::string_view text);

/// One of the six cost-model initializations.
struct ModelKind {
  QaMode qa_mode = QaMode::Constant;
  Relationship relationship = Relationship::NtoM;

  friend bool operator==(const ModelKind&, const ModelKind&) = default;
};

/// Canonical order: size n-m, size 1-m, size 1-1, const n-m, const 1-m, const 1-1.
const std::array<ModelKind, 6>& all_model_kinds();
std::size_t kind_index(ModelKind kind);

/// "const/n-m", "size/1-1", ...
std::string to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

/// Costs are expressed in QA units (C_QA = 1); c_ratio is C = C_DEF / C_QA.
struct CostParams {
  double c_ratio = 1.0;
  double p_qf = 0.0;
  double c_init = 0.0;
  double c_exec = 0.0;
  QaMode qa_mode = QaMode::Constant;

  /// Throws InputError unless c_ratio > 0, p_qf in [0,1) and the fixed costs
  /// are non-negative.
  void validate() const;
};

/// Fully general inputs: per-artifact QA cost, per-defect loss and per-defect
/// QA failure probability, keyed by id.
struct GeneralCostInputs {
  std::unordered_map<std::string, double> qa_costs;
  std::unordered_map<std::string, double> losses;
  std::unordered_map<std::string, double> qf_values;
  double c_init = 0.0;
  double c_exec = 0.0;
};

/// Probability that QA misses a defect spread over `cardinality` artifacts
/// when it misses a defect in a single artifact with probability p_qf.
double qa_failure(double p_qf, std::size_t cardinality);

/// 1 - qa_failure, computed directly so that small values keep their
/// relative precision.
double qa_detection(double p_qf, std::size_t cardinality);

/// qa(s) under the given mode.
double qa_cost(const Artifact& artifact, QaMode mode);

/// Sum of qa(s) over artifacts with the given label.
double qa_effort(const Project& project, const Prediction& prediction, QaMode mode, Label label);

/// The qa/loss/qf mappings that the initialization `params` induces on `project`.
GeneralCostInputs induced_inputs(const Project& project, const CostParams& params);

double cost_general(const Project& project, const OutcomeSummary& outcome, const GeneralCostInputs& inputs);

/// Closed-form cost of one of the six initializations. The project must
/// already be the view matching kind.relationship; params.qa_mode is
/// ignored in favour of kind.qa_mode.
double cost_init(const Project& project, const OutcomeSummary& outcome, const CostParams& params, ModelKind kind);

/// Expected cost when QA is applied to each artifact independently with
/// probability p_qa. p_qa = 0 is "no extra QA", p_qa = 1 is "QA on every
/// artifact". Fixed model costs (c_init, c_exec) are not part of it.
double cost_random(const Project& project, double p_qa, const CostParams& params);

}  // namespace dpcost
