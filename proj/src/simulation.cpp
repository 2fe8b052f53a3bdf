#include "dpcost/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dpcost/error.hpp"
#include "dpcost/rng.hpp"

namespace dpcost {

std::vector<double> default_accuracies() {
  std::vector<double> out;
  for (int k = 1; k <= 19; ++k) out.push_back(k / 20.0);
  return out;
}

std::vector<double> accuracy_range(double first, double last, double step) {
  if (!(step > 0.0)) throw InputError("accuracy step must be positive");
  if (!(first <= last)) throw InputError("accuracy range is empty");
  const auto n = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(std::round((first + static_cast<double>(i) * step) * 1e9) / 1e9);
  return out;
}

void GridConfig::validate() const {
  if (accuracies.empty()) throw InputError("grid needs at least one accuracy");
  for (double a : accuracies) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("accuracy " + std::to_string(a) + " outside [0, 1]");
  }
  if (repetitions < 1) throw InputError("repetitions must be at least 1");
  if (p_qf_values.empty()) throw InputError("grid needs at least one p_qf value");
  for (double p : p_qf_values) {
    if (!(p >= 0.0 && p < 1.0)) throw InputError("p_qf " + std::to_string(p) + " outside [0, 1)");
  }
  if (model_kinds.empty()) throw InputError("grid needs at least one cost model");
  for (std::size_t i = 0; i < model_kinds.size(); ++i) {
    for (std::size_t j = i + 1; j < model_kinds.size(); ++j) {
      if (model_kinds[i] == model_kinds[j]) throw InputError("cost model " + to_string(model_kinds[i]) + " listed twice");
    }
  }
}

std::size_t GridConfig::record_count() const {
  return accuracies.size() * static_cast<std::size_t>(repetitions) * p_qf_values.size() * model_kinds.size();
}

Prediction simulate_prediction(const Project& project, double accuracy, std::uint64_t cell_seed) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw InputError("accuracy must lie in [0, 1]");
  rng::Engine gen(cell_seed);
  auto labels = true_labels(project);
  for (auto& label : labels) {
    if (!rng::bernoulli(gen, accuracy)) label = label == Label::Defective ? Label::Clean : Label::Defective;
  }
  return Prediction(std::move(labels));
}

std::vector<ExperimentRecord> run_grid(const Project& project, const GridConfig& config, std::string_view project_id,
                                       unsigned threads) {
  config.validate();
  if (project.relationship() != Relationship::NtoM) throw InputError("the simulation grid runs on n-m projects");

  const std::array<Project, 3> views{project, project_view(project, Relationship::OneToM),
                                     project_view(project, Relationship::OneToOne)};

  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t cells = config.accuracies.size() * reps;
  const std::size_t per_cell = config.p_qf_values.size() * config.model_kinds.size();
  std::vector<ExperimentRecord> records(cells * per_cell);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t acc_index = cell / reps;
    const std::size_t rep = cell % reps;
    const double accuracy = config.accuracies[acc_index];
    const auto prediction = simulate_prediction(project, accuracy, rng::cell_seed(config.seed, acc_index, rep));

    std::array<std::optional<OutcomeSummary>, 3> outcomes;
    std::size_t slot = cell * per_cell;
    for (double p_qf : config.p_qf_values) {
      for (const auto& kind : config.model_kinds) {
        const auto v = static_cast<std::size_t>(kind.relationship);
        if (!outcomes[v]) outcomes[v] = classify(views[v], prediction);
        const auto& outcome = *outcomes[v];

        CostParams params;
        params.p_qf = p_qf;
        params.qa_mode = kind.qa_mode;
        const auto interval = boundary_interval(views[v], outcome, params, kind);

        auto& r = records[slot++];
        r.project = std::string(project_id);
        r.accuracy = accuracy;
        r.repetition = static_cast<int>(rep);
        r.p_qf = p_qf;
        r.kind = kind;
        r.cm = outcome.cm;
        r.precision = precision(outcome.cm);
        r.recall = recall(outcome.cm);
        r.lower = interval.lower;
        r.upper = interval.upper;
        r.cost_saving_possible = interval.cost_saving_possible;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  if (threads <= 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t c = next++; c < cells; c = next++) run_cell(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    if (a.accuracy != b.accuracy) return a.accuracy < b.accuracy;
    if (a.repetition != b.repetition) return a.repetition < b.repetition;
    if (a.p_qf != b.p_qf) return a.p_qf < b.p_qf;
    return kind_index(a.kind) < kind_index(b.kind);
  });
  return records;
}

}  // namespace dpcost
