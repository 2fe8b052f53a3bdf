#include "dpcost/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "dpcost/error.hpp"
#include "dpcost/rng.hpp"

namespace dpcost {

const std::vector<ProjectProfile>& reference_profiles() {
  static const std::vector<ProjectProfile> profiles{
      {"archiva", 508, 6, 4, 2.00, 108.85},     {"cayenne", 2121, 281, 74, 5.12, 73.46},
      {"commons-math", 789, 2, 2, 1.00, 112.94}, {"deltaspike", 793, 14, 13, 1.31, 56.17},
      {"falcon", 577, 38, 33, 2.91, 121.82},     {"kafka", 1119, 201, 212, 2.00, 87.54},
      {"kylin", 1094, 170, 138, 1.95, 105.98},   {"nutch", 414, 37, 30, 1.73, 106.74},
      {"storm", 1981, 173, 138, 1.88, 114.68},   {"struts", 1334, 61, 38, 2.26, 79.36},
      {"tez", 803, 94, 71, 1.98, 129.33},        {"tika", 694, 44, 35, 1.62, 105.06},
      {"wss4j", 501, 10, 7, 2.00, 110.55},       {"zeppelin", 394, 89, 142, 1.63, 177.53},
      {"zookeeper", 380, 41, 27, 1.85, 113.21},
  };
  return profiles;
}

std::optional<ProjectProfile> find_profile(std::string_view name) {
  for (const auto& p : reference_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

namespace {

std::vector<std::int64_t> draw_sizes(const ProjectProfile& profile, rng::Engine& gen) {
  const auto n = static_cast<std::size_t>(profile.n_artifacts);
  const auto total = std::llround(profile.mean_size * static_cast<double>(profile.n_artifacts));
  if (total < profile.n_artifacts) throw InputError("profile " + profile.name + ": mean size below 1");

  // Exponential weights give the long right tail typical of file sizes.
  std::vector<double> weights(n);
  double weight_sum = 0.0;
  for (auto& w : weights) {
    w = -std::log1p(-rng::unit(gen));
    weight_sum += w;
  }
  const auto extra = total - profile.n_artifacts;
  std::vector<std::int64_t> sizes(n, 1);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto share = static_cast<std::int64_t>(std::floor(weights[i] / weight_sum * static_cast<double>(extra)));
    sizes[i] += share;
    assigned += share;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng::shuffle(order.begin(), order.end(), gen);
  for (std::size_t k = 0; assigned < extra; k = (k + 1) % n, ++assigned) ++sizes[order[k]];
  return sizes;
}

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

Project synthesize_project(const ProjectProfile& profile, std::uint64_t seed) {
  const auto n_s = profile.n_artifacts;
  const auto n_def = profile.n_defective;
  const auto n_d = profile.n_defects;
  const auto incidences = std::llround(profile.mean_members * static_cast<double>(n_d));
  if (n_s < 0 || n_def < 0 || n_d < 0 || n_def > n_s) throw InputError("profile " + profile.name + ": bad counts");
  if ((n_d == 0) != (n_def == 0)) throw InputError("profile " + profile.name + ": defects and defective files disagree");
  if (incidences < n_d || incidences < n_def || incidences > n_d * n_def) {
    throw InputError("profile " + profile.name + ": mean files per defect is infeasible");
  }

  rng::Engine gen(rng::mix(seed, 0x5EED));

  std::vector<Artifact> artifacts;
  artifacts.reserve(static_cast<std::size_t>(n_s));
  const auto sizes = n_s > 0 ? draw_sizes(profile, gen) : std::vector<std::int64_t>{};
  for (std::int64_t i = 0; i < n_s; ++i) {
    char id[64];
    std::snprintf(id, sizeof id, "src/%s/File%04lld.java", profile.name.c_str(), static_cast<long long>(i));
    artifacts.push_back({id, sizes[static_cast<std::size_t>(i)]});
  }

  // Which files are defective.
  std::vector<std::size_t> pool(static_cast<std::size_t>(n_s));
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  rng::shuffle(pool.begin(), pool.end(), gen);
  std::vector<std::size_t> defective(pool.begin(), pool.begin() + n_def);

  // Defect cardinalities: one file each, the rest spread at random.
  std::vector<std::int64_t> card(static_cast<std::size_t>(n_d), 1);
  for (auto left = incidences - n_d; left > 0;) {
    auto& c = card[rng::below(gen, static_cast<std::uint64_t>(n_d))];
    if (c < n_def) {
      ++c;
      --left;
    }
  }

  // Every defective file fills one slot first, the remaining slots draw
  // files not yet in that defect.
  std::vector<std::size_t> slots;
  slots.reserve(static_cast<std::size_t>(incidences));
  for (std::size_t d = 0; d < card.size(); ++d) slots.insert(slots.end(), static_cast<std::size_t>(card[d]), d);
  rng::shuffle(slots.begin(), slots.end(), gen);
  rng::shuffle(defective.begin(), defective.end(), gen);

  std::vector<std::vector<std::size_t>> members(card.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    auto& m = members[slots[k]];
    if (k < defective.size()) {
      m.push_back(defective[k]);
      continue;
    }
    for (;;) {
      const auto candidate = defective[rng::below(gen, defective.size())];
      if (std::find(m.begin(), m.end(), candidate) == m.end()) {
        m.push_back(candidate);
        break;
      }
    }
  }

  std::vector<Defect> defects;
  defects.reserve(card.size());
  const auto key = upper(profile.name);
  for (std::size_t d = 0; d < members.size(); ++d) {
    std::sort(members[d].begin(), members[d].end());
    defects.push_back({key + "-" + std::to_string(d + 1), std::move(members[d])});
  }
  return Project(std::move(artifacts), std::move(defects), Relationship::NtoM);
}

}  // namespace dpcost
