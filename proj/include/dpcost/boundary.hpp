#pragma once

// Bounds on the cost ratio C within which acting on a prediction is cheaper
// than a random, no-QA or all-QA baseline.

#include <cstdint>
#include <limits>

#include "dpcost/cost_engine.hpp"
#include "dpcost/defect_model.hpp"

namespace dpcost {

/// A real bound or Unbounded (+infinity, from a zero denominator).
class ExtendedBound {
 public:
  static ExtendedBound unbounded() noexcept { return ExtendedBound(); }
  static ExtendedBound finite(double value) noexcept { return ExtendedBound(value); }

  bool is_finite() const noexcept { return finite_; }
  bool is_unbounded() const noexcept { return !finite_; }

  /// Throws InputError when unbounded.
  double value() const;
  /// value(), or +infinity when unbounded.
  double or_infinity() const noexcept { return finite_ ? value_ : std::numeric_limits<double>::infinity(); }

  friend bool operator==(const ExtendedBound&, const ExtendedBound&) = default;

 private:
  ExtendedBound() = default;
  explicit ExtendedBound(double value) : value_(value), finite_(true) {}

  double value_ = 0.0;
  bool finite_ = false;
};

enum class ConditionKind : std::uint8_t {
  UpperBound,        // x > 0: profitable iff C < y/x
  LowerBound,        // x < 0: profitable iff C > y/x
  AlwaysProfitable,  // x = 0 and y > 0
  NeverProfitable,   // x = 0 and y <= 0
};

/// Profit against a baseline is positive iff C*x < y.
struct BoundaryCondition {
  double x = 0.0;
  double y = 0.0;
  ConditionKind kind = ConditionKind::NeverProfitable;
  ExtendedBound threshold = ExtendedBound::unbounded();  // y/x; unbounded when x = 0

  /// Whether a given cost ratio satisfies the condition.
  bool admits(double c_ratio) const;
};

struct BoundaryInterval {
  ExtendedBound lower = ExtendedBound::unbounded();
  ExtendedBound upper = ExtendedBound::unbounded();
  bool cost_saving_possible = false;
};

/// Condition for positive expected profit versus applying QA to each
/// artifact at random with probability p_qa.
BoundaryCondition theorem_boundary(const Project& project, const OutcomeSummary& outcome, double p_qa,
                                   const CostParams& params);

/// C must exceed this to beat doing no extra QA at all.
ExtendedBound lower_boundary(const Project& project, const OutcomeSummary& outcome, const CostParams& params);

/// C must stay below this to beat QA on every artifact. A negative numerator
/// (fixed costs above the QA that was saved) yields 0.
ExtendedBound upper_boundary(const Project& project, const OutcomeSummary& outcome, const CostParams& params);

/// Closed-form boundary pair of one of the six initializations; `project`
/// must be the view matching kind.relationship.
BoundaryInterval boundary_interval(const Project& project, const OutcomeSummary& outcome, const CostParams& params,
                                   ModelKind kind);

/// lower finite and (upper unbounded or lower < upper).
bool cost_saving_possible(const ExtendedBound& lower, const ExtendedBound& upper);

}  // namespace dpcost
