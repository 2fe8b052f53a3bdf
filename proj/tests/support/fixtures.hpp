#pragma once

// Shared test inputs: the three-file example project, random instance
// generators and tolerance helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dpcost/defect_model.hpp"

namespace dpcost::test {

/// S = {s1, s2, s3}, D = {d1 = {s1}, d2 = {s1, s2}}.
inline Project project_e(std::int64_t s1 = 1, std::int64_t s2 = 1, std::int64_t s3 = 1) {
  return Project({{"s1", s1}, {"s2", s2}, {"s3", s3}}, std::vector<DefectSpec>{{"d1", {"s1"}}, {"d2", {"s1", "s2"}}});
}

/// h(s1) = 1, h(s2) = 0, h(s3) = 0.
inline Prediction prediction_e() { return Prediction({Label::Defective, Label::Clean, Label::Clean}); }

inline Prediction labels(std::initializer_list<int> bits) {
  std::vector<Label> out;
  for (int b : bits) out.push_back(b ? Label::Defective : Label::Clean);
  return Prediction(std::move(out));
}

/// |a - b| <= tol * max(1, |a|, |b|).
inline bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct RandomShape {
  int min_artifacts = 1;
  int max_artifacts = 12;
  int max_defects = 8;
  int max_size = 500;
  bool single_member = false;    // every |d| = 1
  bool one_per_artifact = false;  // with single_member: at most one defect per artifact
};

/// Random NtoM-relationship project (the relationship tag stays NtoM even
/// when the shape is degenerate, so all three views can be derived).
inline Project random_project(std::mt19937_64& gen, const RandomShape& shape = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  const int n = pick(shape.min_artifacts, shape.max_artifacts);
  std::vector<Artifact> artifacts;
  for (int i = 0; i < n; ++i) artifacts.push_back({"f" + std::to_string(i), pick(1, shape.max_size)});

  std::vector<DefectSpec> defects;
  const int n_defects = pick(0, shape.max_defects);
  std::vector<int> free(n);
  for (int i = 0; i < n; ++i) free[i] = i;
  std::shuffle(free.begin(), free.end(), gen);
  for (int k = 0; k < n_defects; ++k) {
    DefectSpec d{"D-" + std::to_string(k), {}};
    if (shape.single_member) {
      if (shape.one_per_artifact) {
        if (free.empty()) break;
        d.members.push_back(artifacts[free.back()].id);
        free.pop_back();
      } else {
        d.members.push_back(artifacts[pick(0, n - 1)].id);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        if (pick(0, 2) == 0) d.members.push_back(artifacts[i].id);
      }
      if (d.members.empty()) d.members.push_back(artifacts[pick(0, n - 1)].id);
    }
    defects.push_back(std::move(d));
  }
  return Project(std::move(artifacts), std::move(defects));
}

inline Prediction random_prediction(std::mt19937_64& gen, const Project& project, double p_flag = 0.5) {
  std::bernoulli_distribution flag(p_flag);
  std::vector<Label> out;
  for (std::size_t i = 0; i < project.artifacts().size(); ++i) out.push_back(flag(gen) ? Label::Defective : Label::Clean);
  return Prediction(std::move(out));
}

}  // namespace dpcost::test
