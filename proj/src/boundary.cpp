#include "dpcost/boundary.hpp"

#include <cmath>
#include <vector>

#include "dpcost/error.hpp"

namespace dpcost {

double ExtendedBound::value() const {
  if (!finite_) throw InputError("value() of an unbounded bound");
  return value_;
}

bool BoundaryCondition::admits(double c_ratio) const {
  switch (kind) {
    case ConditionKind::UpperBound:
    case ConditionKind::LowerBound:
      return c_ratio * x < y;
    case ConditionKind::AlwaysProfitable:
      return true;
    case ConditionKind::NeverProfitable:
      return false;
  }
  return false;
}

namespace {

double fixed_costs(const CostParams& params) { return params.c_init + params.c_exec; }

ExtendedBound ratio_or_unbounded(double numerator, double denominator) {
  if (denominator == 0.0) return ExtendedBound::unbounded();
  return ExtendedBound::finite(numerator / denominator);
}

// A negative numerator means the model loses to all-QA at every C, even when
// it misses nothing.
ExtendedBound clamped_upper(double saved, double escaped) {
  if (saved < 0.0) return ExtendedBound::finite(0.0);
  return ratio_or_unbounded(saved, escaped);
}

}  // namespace

bool cost_saving_possible(const ExtendedBound& lower, const ExtendedBound& upper) {
  return lower.is_finite() && (upper.is_unbounded() || lower.value() < upper.value());
}

BoundaryCondition theorem_boundary(const Project& project, const OutcomeSummary& outcome, double p_qa,
                                   const CostParams& params) {
  params.validate();
  if (!(p_qa >= 0.0 && p_qa <= 1.0)) throw InputError("p_qa must lie in [0, 1]");
  const auto& defects = project.defects();

  BoundaryCondition bc;
  std::vector<bool> predicted(defects.size(), false);
  for (auto k : outcome.predicted_defects) predicted[k] = true;
  // One term per defect, so that x is exactly 0 at p_qa = 0 with nothing
  // predicted and at p_qa = 1 with nothing missed.
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const auto card = defects[k].cardinality();
    const double all_checked = std::pow(p_qa, static_cast<double>(card));
    bc.x += (all_checked - (predicted[k] ? 1.0 : 0.0)) * qa_detection(params.p_qf, card);
  }

  double random_qa = 0.0;
  for (const auto& a : project.artifacts()) random_qa += p_qa * qa_cost(a, params.qa_mode);
  bc.y = random_qa - qa_effort(project, outcome.prediction, params.qa_mode, Label::Defective) - fixed_costs(params);

  if (bc.x > 0.0) {
    bc.kind = ConditionKind::UpperBound;
  } else if (bc.x < 0.0) {
    bc.kind = ConditionKind::LowerBound;
  } else {
    bc.kind = bc.y > 0.0 ? ConditionKind::AlwaysProfitable : ConditionKind::NeverProfitable;
  }
  bc.threshold = bc.x == 0.0 ? ExtendedBound::unbounded() : ExtendedBound::finite(bc.y / bc.x);
  return bc;
}

ExtendedBound lower_boundary(const Project& project, const OutcomeSummary& outcome, const CostParams& params) {
  params.validate();
  double found = 0.0;
  for (auto k : outcome.predicted_defects) {
    found += qa_detection(params.p_qf, project.defects()[k].cardinality());
  }
  const double spent =
      qa_effort(project, outcome.prediction, params.qa_mode, Label::Defective) + fixed_costs(params);
  return ratio_or_unbounded(spent, found);
}

ExtendedBound upper_boundary(const Project& project, const OutcomeSummary& outcome, const CostParams& params) {
  params.validate();
  double escaped = 0.0;
  for (auto k : outcome.missed_defects) {
    escaped += qa_detection(params.p_qf, project.defects()[k].cardinality());
  }
  const double saved = qa_effort(project, outcome.prediction, params.qa_mode, Label::Clean) - fixed_costs(params);
  return clamped_upper(saved, escaped);
}

BoundaryInterval boundary_interval(const Project& project, const OutcomeSummary& outcome, const CostParams& params,
                                   ModelKind kind) {
  params.validate();
  if (project.relationship() != kind.relationship) {
    throw InputError("boundaries for " + to_string(kind) + " need a " + std::string(to_string(kind.relationship)) +
                     " view, got " + std::string(to_string(project.relationship())));
  }
  const auto& cm = outcome.cm;
  const double keep = 1.0 - params.p_qf;

  double flagged = 0.0;
  double unflagged = 0.0;
  if (kind.qa_mode == QaMode::Constant) {
    flagged = static_cast<double>(cm.tp + cm.fp);
    unflagged = static_cast<double>(cm.tn + cm.fn);
  } else {
    flagged = qa_effort(project, outcome.prediction, QaMode::SizeAware, Label::Defective);
    unflagged = qa_effort(project, outcome.prediction, QaMode::SizeAware, Label::Clean);
  }

  double found = 0.0;
  double escaped = 0.0;
  switch (kind.relationship) {
    case Relationship::NtoM:
      for (auto k : outcome.predicted_defects) {
        found += std::pow(keep, static_cast<double>(project.defects()[k].cardinality()));
      }
      for (auto k : outcome.missed_defects) {
        escaped += std::pow(keep, static_cast<double>(project.defects()[k].cardinality()));
      }
      break;
    case Relationship::OneToM:
      found = static_cast<double>(outcome.predicted_defects.size()) * keep;
      escaped = static_cast<double>(outcome.missed_defects.size()) * keep;
      break;
    case Relationship::OneToOne:
      found = static_cast<double>(cm.tp) * keep;
      escaped = static_cast<double>(cm.fn) * keep;
      break;
  }

  BoundaryInterval out;
  out.lower = ratio_or_unbounded(flagged + fixed_costs(params), found);
  out.upper = clamped_upper(unflagged - fixed_costs(params), escaped);
  out.cost_saving_possible = cost_saving_possible(out.lower, out.upper);
  return out;
}

}  // namespace dpcost
