#include "dpcost/cost_engine.hpp"

#include <cmath>

#include "dpcost/error.hpp"

namespace dpcost {

std::string_view to_string(QaMode mode) { return mode == QaMode::Constant ? "const" : "size"; }

std::optional<QaMode> parse_qa_mode(std::string_view text) {
  if (text == "const") return QaMode::Constant;
  if (text == "size") return QaMode::SizeAware;
  return std::nullopt;
}

const std::array<ModelKind, 6>& all_model_kinds() {
  static const std::array<ModelKind, 6> kinds{{
      {QaMode::SizeAware, Relationship::NtoM},
      {QaMode::SizeAware, Relationship::OneToM},
      {QaMode::SizeAware, Relationship::OneToOne},
      {QaMode::Constant, Relationship::NtoM},
      {QaMode::Constant, Relationship::OneToM},
      {QaMode::Constant, Relationship::OneToOne},
  }};
  return kinds;
}

std::size_t kind_index(ModelKind kind) {
  return (kind.qa_mode == QaMode::SizeAware ? 0 : 3) + static_cast<std::size_t>(kind.relationship);
}

std::string to_string(ModelKind kind) {
  return std::string(to_string(kind.qa_mode)) + "/" + std::string(to_string(kind.relationship));
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto mode = parse_qa_mode(text.substr(0, slash));
  auto rel = parse_relationship(text.substr(slash + 1));
  if (!mode || !rel) return std::nullopt;
  return ModelKind{*mode, *rel};
}

void CostParams::validate() const {
  if (!(c_ratio > 0.0) || !std::isfinite(c_ratio)) throw InputError("cost ratio must be positive and finite");
  if (!(p_qf >= 0.0 && p_qf < 1.0)) throw InputError("p_qf must lie in [0, 1)");
  if (!(c_init >= 0.0) || !std::isfinite(c_init)) throw InputError("c_init must be non-negative");
  if (!(c_exec >= 0.0) || !std::isfinite(c_exec)) throw InputError("c_exec must be non-negative");
}

double qa_detection(double p_qf, std::size_t cardinality) {
  if (cardinality == 0) throw InputError("qa_failure needs a defect with at least one artifact");
  if (!(p_qf >= 0.0 && p_qf < 1.0)) throw InputError("p_qf must lie in [0, 1)");
  return std::pow(1.0 - p_qf, static_cast<double>(cardinality));
}

double qa_failure(double p_qf, std::size_t cardinality) { return 1.0 - qa_detection(p_qf, cardinality); }

double qa_cost(const Artifact& artifact, QaMode mode) {
  return mode == QaMode::Constant ? 1.0 : static_cast<double>(artifact.size);
}

double qa_effort(const Project& project, const Prediction& prediction, QaMode mode, Label label) {
  double sum = 0.0;
  const auto& artifacts = project.artifacts();
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    if (prediction[i] == label) sum += qa_cost(artifacts[i], mode);
  }
  return sum;
}

GeneralCostInputs induced_inputs(const Project& project, const CostParams& params) {
  params.validate();
  GeneralCostInputs in;
  in.c_init = params.c_init;
  in.c_exec = params.c_exec;
  for (const auto& a : project.artifacts()) in.qa_costs.emplace(a.id, qa_cost(a, params.qa_mode));
  for (const auto& d : project.defects()) {
    in.losses.emplace(d.id, params.c_ratio);
    in.qf_values.emplace(d.id, qa_failure(params.p_qf, d.cardinality()));
  }
  return in;
}

namespace {

double lookup(const std::unordered_map<std::string, double>& map, const std::string& id, const char* what) {
  auto it = map.find(id);
  if (it == map.end()) throw InputError(std::string("missing ") + what + " for " + id);
  return it->second;
}

void check_outcome(const Project& project, const OutcomeSummary& outcome) {
  if (outcome.prediction.size() != project.artifacts().size() ||
      outcome.predicted_defects.size() + outcome.missed_defects.size() != project.defects().size()) {
    throw InputError("outcome was not computed from this project");
  }
}

}  // namespace

double cost_general(const Project& project, const OutcomeSummary& outcome, const GeneralCostInputs& inputs) {
  check_outcome(project, outcome);
  double cost = inputs.c_init + inputs.c_exec;
  const auto& artifacts = project.artifacts();
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    if (outcome.prediction.flagged(i)) cost += lookup(inputs.qa_costs, artifacts[i].id, "qa cost");
  }
  for (auto k : outcome.missed_defects) cost += lookup(inputs.losses, project.defects()[k].id, "loss");
  for (auto k : outcome.predicted_defects) {
    const auto& id = project.defects()[k].id;
    cost += lookup(inputs.qf_values, id, "qf") * lookup(inputs.losses, id, "loss");
  }
  return cost;
}

double cost_init(const Project& project, const OutcomeSummary& outcome, const CostParams& params, ModelKind kind) {
  params.validate();
  check_outcome(project, outcome);
  if (project.relationship() != kind.relationship) {
    throw InputError("cost model " + to_string(kind) + " needs a " + std::string(to_string(kind.relationship)) +
                     " view, got " + std::string(to_string(project.relationship())));
  }
  const double c = params.c_ratio;
  const auto& cm = outcome.cm;

  const double qa = kind.qa_mode == QaMode::Constant
                        ? static_cast<double>(cm.tp + cm.fp)
                        : qa_effort(project, outcome.prediction, QaMode::SizeAware, Label::Defective);

  double defects = 0.0;
  switch (kind.relationship) {
    case Relationship::NtoM: {
      double escaped = 0.0;
      for (auto k : outcome.predicted_defects) {
        escaped += 1.0 - std::pow(1.0 - params.p_qf, static_cast<double>(project.defects()[k].cardinality()));
      }
      defects = static_cast<double>(outcome.missed_defects.size()) * c + escaped * c;
      break;
    }
    case Relationship::OneToM:
      defects = static_cast<double>(outcome.missed_defects.size()) * c +
                static_cast<double>(outcome.predicted_defects.size()) * params.p_qf * c;
      break;
    case Relationship::OneToOne:
      defects = static_cast<double>(cm.fn) * c + static_cast<double>(cm.tp) * params.p_qf * c;
      break;
  }
  return qa + defects + params.c_init + params.c_exec;
}

double cost_random(const Project& project, double p_qa, const CostParams& params) {
  params.validate();
  if (!(p_qa >= 0.0 && p_qa <= 1.0)) throw InputError("p_qa must lie in [0, 1]");
  const double c = params.c_ratio;
  double qa = 0.0;
  for (const auto& a : project.artifacts()) qa += p_qa * qa_cost(a, params.qa_mode);
  double defects = 0.0;
  for (const auto& d : project.defects()) {
    // Every defect has at least one member, so the power is never 0^0.
    const double all_checked = std::pow(p_qa, static_cast<double>(d.cardinality()));
    defects += (1.0 - all_checked) * c + all_checked * qa_failure(params.p_qf, d.cardinality()) * c;
  }
  // C_INIT and C_EXEC belong to the model, not to this baseline.
  return qa + defects;
}

}  // namespace dpcost
