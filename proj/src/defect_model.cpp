#include "dpcost/defect_model.hpp"

#include <algorithm>
#include <unordered_set>

#include "dpcost/error.hpp"

namespace dpcost {

std::string_view to_string(Relationship r) {
  switch (r) {
    case Relationship::NtoM:
      return "n-m";
    case Relationship::OneToM:
      return "1-m";
    case Relationship::OneToOne:
      return "1-1";
  }
  return "?";
}

std::optional<Relationship> parse_relationship(std::string_view text) {
  if (text == "n-m") return Relationship::NtoM;
  if (text == "1-m") return Relationship::OneToM;
  if (text == "1-1") return Relationship::OneToOne;
  return std::nullopt;
}

Project::Project(std::vector<Artifact> artifacts, std::vector<DefectSpec> defects, Relationship relationship)
    : artifacts_(std::move(artifacts)), relationship_(relationship) {
  build_index();
  defects_.reserve(defects.size());
  for (auto& spec : defects) {
    Defect d{std::move(spec.id), {}};
    d.members.reserve(spec.members.size());
    for (const auto& member : spec.members) {
      auto idx = index_of(member);
      if (!idx) throw InputError("defect " + d.id + " references unknown artifact " + member);
      d.members.push_back(*idx);
    }
    std::sort(d.members.begin(), d.members.end());
    if (std::adjacent_find(d.members.begin(), d.members.end()) != d.members.end()) {
      throw InputError("defect " + d.id + " lists an artifact twice");
    }
    defects_.push_back(std::move(d));
  }
  validate();
}

Project::Project(std::vector<Artifact> artifacts, std::vector<Defect> defects, Relationship relationship)
    : artifacts_(std::move(artifacts)), defects_(std::move(defects)), relationship_(relationship) {
  build_index();
  for (const auto& d : defects_) {
    if (!std::is_sorted(d.members.begin(), d.members.end()) ||
        std::adjacent_find(d.members.begin(), d.members.end()) != d.members.end()) {
      throw InputError("defect " + d.id + " members must be strictly ascending");
    }
    if (!d.members.empty() && d.members.back() >= artifacts_.size()) {
      throw InputError("defect " + d.id + " references an artifact index out of range");
    }
  }
  validate();
}

void Project::build_index() {
  index_.reserve(artifacts_.size());
  for (std::size_t i = 0; i < artifacts_.size(); ++i) {
    const auto& a = artifacts_[i];
    if (a.id.empty()) throw InputError("artifact at position " + std::to_string(i) + " has an empty id");
    if (a.size < 1) throw InputError("artifact " + a.id + " has size " + std::to_string(a.size) + " < 1");
    if (!index_.emplace(a.id, i).second) throw InputError("duplicate artifact id " + a.id);
  }
}

void Project::validate() const {
  std::unordered_set<std::string_view> ids;
  std::vector<int> defects_per_artifact(artifacts_.size(), 0);
  for (const auto& d : defects_) {
    if (d.id.empty()) throw InputError("defect with empty id");
    if (!ids.insert(d.id).second) throw InputError("duplicate defect id " + d.id);
    if (d.members.empty()) throw InputError("defect " + d.id + " affects no artifact");
    if (relationship_ != Relationship::NtoM && d.members.size() != 1) {
      throw InputError("defect " + d.id + " has " + std::to_string(d.members.size()) + " members in a " +
                       std::string(to_string(relationship_)) + " view");
    }
    for (auto m : d.members) ++defects_per_artifact[m];
  }
  if (relationship_ == Relationship::OneToOne) {
    for (std::size_t i = 0; i < artifacts_.size(); ++i) {
      if (defects_per_artifact[i] > 1) {
        throw InputError("artifact " + artifacts_[i].id + " carries several defects in a 1-1 view");
      }
    }
  }
}

std::optional<std::size_t> Project::index_of(std::string_view artifact_id) const {
  auto it = index_.find(std::string(artifact_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Project::member_ids(const Defect& defect) const {
  std::vector<std::string> out;
  out.reserve(defect.members.size());
  for (auto m : defect.members) out.push_back(artifacts_[m].id);
  return out;
}

Prediction Prediction::from_map(const Project& project, const std::map<std::string, Label>& labels) {
  for (const auto& [id, label] : labels) {
    if (!project.index_of(id)) throw InputError("unknown artifact " + id);
  }
  std::vector<Label> out;
  out.reserve(project.artifacts().size());
  for (const auto& a : project.artifacts()) {
    auto it = labels.find(a.id);
    if (it == labels.end()) throw InputError("unlabeled artifact " + a.id);
    out.push_back(it->second);
  }
  return Prediction(std::move(out));
}

Prediction Prediction::constant(const Project& project, Label label) {
  return Prediction(std::vector<Label>(project.artifacts().size(), label));
}

namespace {

std::vector<std::string> defect_ids(const Project& project, const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(project.defects()[i].id);
  return out;
}

}  // namespace

std::vector<std::string> OutcomeSummary::predicted_ids(const Project& project) const {
  return defect_ids(project, predicted_defects);
}

std::vector<std::string> OutcomeSummary::missed_ids(const Project& project) const {
  return defect_ids(project, missed_defects);
}

std::vector<Label> true_labels(const Project& project) {
  std::vector<Label> labels(project.artifacts().size(), Label::Clean);
  for (const auto& d : project.defects()) {
    for (auto m : d.members) labels[m] = Label::Defective;
  }
  return labels;
}

Partition partition_artifacts(const Project& project) {
  const auto truth = true_labels(project);
  Partition p;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& side = truth[i] == Label::Defective ? p.defective : p.clean;
    side.push_back(project.artifacts()[i].id);
  }
  return p;
}

OutcomeSummary classify(const Project& project, const Prediction& prediction) {
  const auto& artifacts = project.artifacts();
  if (prediction.size() < artifacts.size()) {
    throw InputError("unlabeled artifact " + artifacts[prediction.size()].id);
  }
  if (prediction.size() > artifacts.size()) {
    throw InputError("prediction has " + std::to_string(prediction.size() - artifacts.size()) +
                     " label(s) beyond the project's artifacts");
  }

  OutcomeSummary out;
  const auto truth = true_labels(project);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool defective = truth[i] == Label::Defective;
    if (prediction.flagged(i)) {
      ++(defective ? out.cm.tp : out.cm.fp);
    } else {
      ++(defective ? out.cm.fn : out.cm.tn);
    }
  }
  for (std::size_t k = 0; k < project.defects().size(); ++k) {
    const auto& members = project.defects()[k].members;
    const bool all_flagged =
        std::all_of(members.begin(), members.end(), [&](std::size_t m) { return prediction.flagged(m); });
    (all_flagged ? out.predicted_defects : out.missed_defects).push_back(k);
  }
  out.prediction = prediction;
  return out;
}

Project project_view(const Project& project, Relationship target) {
  if (project.relationship() != Relationship::NtoM) {
    throw InputError("views are derived from n-m data, got a " + std::string(to_string(project.relationship())) +
                     " project");
  }
  const auto& artifacts = project.artifacts();
  std::vector<Defect> defects;
  switch (target) {
    case Relationship::NtoM:
      return project;
    case Relationship::OneToM:
      for (const auto& d : project.defects()) {
        for (auto m : d.members) defects.push_back({d.id + "#" + artifacts[m].id, {m}});
      }
      break;
    case Relationship::OneToOne: {
      std::vector<std::string> touching(artifacts.size());
      for (const auto& d : project.defects()) {
        for (auto m : d.members) {
          if (!touching[m].empty()) touching[m] += '+';
          touching[m] += d.id;
        }
      }
      for (std::size_t i = 0; i < artifacts.size(); ++i) {
        if (!touching[i].empty()) defects.push_back({touching[i] + "#" + artifacts[i].id, {i}});
      }
      break;
    }
  }
  return Project(artifacts, std::move(defects), target);
}

Fraction precision(const ConfusionMatrix& cm) {
  const auto denom = cm.tp + cm.fp;
  if (denom == 0) return std::nullopt;
  return static_cast<double>(cm.tp) / static_cast<double>(denom);
}

Fraction recall(const ConfusionMatrix& cm) {
  const auto denom = cm.tp + cm.fn;
  if (denom == 0) return std::nullopt;
  return static_cast<double>(cm.tp) / static_cast<double>(denom);
}

}  // namespace dpcost
