// Experiment orchestration: warm-started training over Trotter step counts,
// parameter extrapolation and evaluation against the exact propagator.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "equitrot/config.hpp"

namespace equitrot {

struct RunRecord {
  int r = 0;
  std::uint64_t seed = 0;
  double fid_trotter_exact = 0.0;
  std::optional<double> fid_trained_exact;
  std::optional<double> fid_trained_target;
  std::optional<double> fid_extrapolated_exact;
  long cx_trotter = 0;
  long cx_ansatz = 0;
  std::optional<double> wall_time_s;
  /// Set when the forecast came from a model with growing modes.
  bool forecast_diverging = false;
};

/// Shared, read-only pieces of one experiment: the exact reference state,
/// the ansatz and the initial state. Safe to use from several threads.
class ExperimentContext {
 public:
  explicit ExperimentContext(const ExperimentConfig& config);

  const ExperimentConfig& config() const { return config_; }
  const Ansatz& ansatz() const { return ansatz_; }
  const StateVector& initial_state() const { return initial_; }
  const StateVector& exact_state() const { return exact_; }

  StateVector trotter_target(int r) const;
  long trotter_cx(int r) const;

 private:
  ExperimentConfig config_;
  Ansatz ansatz_;
  StateVector initial_;
  StateVector exact_;
};

struct SweepResult {
  ParamTrajectory trajectory;
  std::vector<RunRecord> records;
  /// Set when training stopped early; trajectory and records hold the
  /// completed steps.
  std::optional<std::string> failure;
};

/// Trains every r in config.r_train in ascending order, initializing each
/// step from the canonicalized parameters of the previous one.
SweepResult run_training_sweep(const ExperimentContext& ctx, std::uint64_t seed);
SweepResult run_training_sweep(const ExperimentConfig& config, std::uint64_t seed);

/// Forecast parameters for r beyond the trajectory with the configured
/// extrapolator.
std::vector<double> extrapolate_params(const ExtrapolatorSpec& spec, const ParamTrajectory& traj,
                                       int r, bool* diverging = nullptr);

/// One record per r in config.r_eval. Trained columns come from the
/// trajectory inside its range; beyond it the forecast is evaluated.
std::vector<RunRecord> run_extrapolation(const ExperimentContext& ctx, const ParamTrajectory& traj,
                                         std::uint64_t seed);
std::vector<RunRecord> run_extrapolation(const ExperimentConfig& config,
                                         const ParamTrajectory& traj, std::uint64_t seed);

struct ExperimentResult {
  std::vector<ParamTrajectory> trajectories;  // one per seed, config order
  std::vector<RunRecord> records;             // sorted by (r, seed)
  std::optional<std::string> failure;
};

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Exceptions
/// escaping fn are rethrown after all workers finish (the first by index).
void for_each_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Sweep and extrapolation for every seed, seeds running on up to
/// config.threads workers.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-r median over seeds of every fidelity column.
std::vector<RunRecord> median_summary(const std::vector<RunRecord>& records);

void sort_records(std::vector<RunRecord>& records);

}  // namespace equitrot
