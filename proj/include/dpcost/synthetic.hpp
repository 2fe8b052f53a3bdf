#pragma once

// Synthetic n-m projects that reproduce published aggregate statistics
// (file count, defective files, defects, mean files per defect, mean LOC)
// when the underlying defect matrices are not at hand.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpcost/defect_model.hpp"

namespace dpcost {

struct ProjectProfile {
  std::string name;
  std::int64_t n_artifacts = 0;
  std::int64_t n_defective = 0;
  std::int64_t n_defects = 0;
  double mean_members = 0.0;
  double mean_size = 0.0;
};

/// Aggregates of fifteen Apache projects (post-release defects fixed in 2017,
/// Java non-test files).
const std::vector<ProjectProfile>& reference_profiles();
std::optional<ProjectProfile> find_profile(std::string_view name);

/// Deterministic for a given (profile, seed). Matches the profile's counts
/// exactly; the incidence total is round(mean_members * n_defects) and the
/// LOC total round(mean_size * n_artifacts), so both means match to
/// rounding. Throws InputError for infeasible profiles.
Project synthesize_project(const ProjectProfile& profile, std::uint64_t seed);

}  // namespace dpcost
