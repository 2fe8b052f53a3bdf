#pragma once

// Artifacts, defects, their n-to-m incidence, binary predictions and the
// outcome of comparing a prediction against the observed defects.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dpcost {

/// How defects relate to artifacts in a Project.
enum class Relationship : std::uint8_t {
  NtoM,      // a defect may span several artifacts; an artifact may carry several defects
  OneToM,    // every defect touches exactly one artifact
  OneToOne,  // additionally every artifact carries at most one defect
};

std::string_view to_string(Relationship r);
std::optional<Relationship> parse_relationship(std::string_view text);

struct Artifact {
  std::string id;
  std::int64_t size = 1;  // logical lines of code

  friend bool operator==(const Artifact&, const Artifact&) = default;
};

/// A defect described by the ids of the artifacts it affects.
struct DefectSpec {
  std::string id;
  std::vector<std::string> members;
};

/// A defect inside a Project. Members are indices into Project::artifacts(),
/// strictly ascending.
struct Defect {
  std::string id;
  std::vector<std::size_t> members;

  std::size_t cardinality() const noexcept { return members.size(); }

  friend bool operator==(const Defect&, const Defect&) = default;
};

/// Validated software product: artifacts plus the defect incidence.
///
/// Construction enforces unique artifact and defect ids, size >= 1, non-empty
/// defects whose members exist, and the single-member / at-most-one-defect
/// constraints of the OneToM and OneToOne views. Immutable afterwards.
class Project {
 public:
  Project() = default;
  Project(std::vector<Artifact> artifacts, std::vector<DefectSpec> defects,
          Relationship relationship = Relationship::NtoM);
  Project(std::vector<Artifact> artifacts, std::vector<Defect> defects, Relationship relationship);

  const std::vector<Artifact>& artifacts() const noexcept { return artifacts_; }
  const std::vector<Defect>& defects() const noexcept { return defects_; }
  Relationship relationship() const noexcept { return relationship_; }

  std::optional<std::size_t> index_of(std::string_view artifact_id) const;
  std::vector<std::string> member_ids(const Defect& defect) const;

  friend bool operator==(const Project& a, const Project& b) {
    return a.relationship_ == b.relationship_ && a.artifacts_ == b.artifacts_ && a.defects_ == b.defects_;
  }

 private:
  void build_index();
  void validate() const;

  std::vector<Artifact> artifacts_;
  std::vector<Defect> defects_;
  Relationship relationship_ = Relationship::NtoM;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class Label : std::uint8_t { Clean = 0, Defective = 1 };

/// Total labeling of a project's artifacts, stored in artifact order.
class Prediction {
 public:
  Prediction() = default;
  explicit Prediction(std::vector<Label> labels) : labels_(std::move(labels)) {}

  /// Builds the labeling from an id-keyed map; every artifact must be
  /// labeled and every key must name an artifact.
  static Prediction from_map(const Project& project, const std::map<std::string, Label>& labels);
  static Prediction constant(const Project& project, Label label);

  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  Label operator[](std::size_t i) const { return labels_[i]; }
  bool flagged(std::size_t i) const { return labels_[i] == Label::Defective; }

  friend bool operator==(const Prediction&, const Prediction&) = default;

 private:
  std::vector<Label> labels_;
};

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Result of classify(). Defect sets hold indices into Project::defects();
/// `prediction` is the labeling the summary was computed from, kept so that
/// cost and boundary evaluation can sum QA effort over flagged artifacts.
struct OutcomeSummary {
  ConfusionMatrix cm;
  std::vector<std::size_t> predicted_defects;  // D_PRED
  std::vector<std::size_t> missed_defects;     // D_MISS
  Prediction prediction;

  std::vector<std::string> predicted_ids(const Project& project) const;
  std::vector<std::string> missed_ids(const Project& project) const;
};

struct Partition {
  std::vector<std::string> defective;  // S_DEF, in artifact order
  std::vector<std::string> clean;      // S_CLEAN, in artifact order
};

Partition partition_artifacts(const Project& project);

/// Indicator of S_DEF in artifact order; the labeling of a perfect predictor.
std::vector<Label> true_labels(const Project& project);

OutcomeSummary classify(const Project& project, const Prediction& prediction);

/// Projects an NtoM project onto one of the three relationship views.
/// OneToM expands every (defect, member) incidence pair into its own defect
/// named "<defect>#<artifact>". OneToOne keeps one defect per defective
/// artifact, named by the '+'-joined ids of the defects touching it,
/// followed by "#<artifact>".
Project project_view(const Project& project, Relationship target);

/// Undefined is represented by std::nullopt.
using Fraction = std::optional<double>;

Fraction precision(const ConfusionMatrix& cm);
Fraction recall(const ConfusionMatrix& cm);

}  // namespace dpcost
