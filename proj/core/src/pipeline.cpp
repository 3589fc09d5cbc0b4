#include "equitrot/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <array>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

namespace equitrot {

ExperimentContext::ExperimentContext(const ExperimentConfig& config)
    : config_((config.validate(), config)),
      ansatz_(config.ansatz),
      initial_(singlet_initial_state(config.chain.n_qubits)),
      exact_(exact_evolve(config.chain, initial_)) {}

StateVector ExperimentContext::trotter_target(int r) const {
  return trotter_state(config_.chain, config_.scheme, r, initial_);
}

long ExperimentContext::trotter_cx(int r) const {
  return cx_count(build_trotter_circuit(config_.chain, config_.scheme, r));
}

namespace {

using Clock = std::chrono::steady_clock;

ParamVector random_init(std::size_t p, std::uint64_t seed) {
  std::seed_seq seq{seed, std::uint64_t{0x5eed}};
  Rng rng(seq);
  std::uniform_real_distribution<double> dist(0.0, kParamPeriod);
  ParamVector out(p);
  for (auto& x : out) x = dist(rng);
  return out;
}

std::uint64_t step_seed(std::uint64_t seed, int r) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(r), std::uint64_t{0x5b5a}};
  std::uint64_t out = 0;
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out;
}

/// Trains at step count r. Without `prev` the loss falls back to plain
/// infidelity, since the distance term needs a previous column.
TrainResult train_step(const ExperimentContext& ctx, const StateVector& target, int r,
                       std::uint64_t seed, const ParamVector& init,
                       const std::optional<ParamVector>& prev) {
  LossSpec loss = ctx.config().loss;
  if (prev) {
    loss.previous_params = *prev;
  } else {
    loss.kind = LossSpec::Kind::Infidelity;
    loss.previous_params.reset();
  }
  OptimizerSpec opt = ctx.config().optimizer;
  opt.seed = step_seed(seed, r);
  return train(target, ctx.ansatz(), loss, opt, init);
}

RunRecord base_record(const ExperimentContext& ctx, const StateVector& target, int r,
                      std::uint64_t seed) {
  RunRecord rec;
  rec.r = r;
  rec.seed = seed;
  rec.fid_trotter_exact = fidelity(target, ctx.exact_state());
  rec.cx_trotter = ctx.trotter_cx(r);
  rec.cx_ansatz = cx_count(ctx.ansatz().circuit());
  return rec;
}

void fill_trained(const ExperimentContext& ctx, const StateVector& target,
                  std::span<const double> params, RunRecord& rec) {
  const StateVector prepared = ctx.ansatz().prepare(params);
  rec.fid_trained_target = fidelity(prepared, target);
  rec.fid_trained_exact = fidelity(prepared, ctx.exact_state());
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ParamVector column(const ParamTrajectory& traj, Eigen::Index k) {
  ParamVector out(static_cast<std::size_t>(traj.n_params()));
  for (Eigen::Index i = 0; i < traj.n_params(); ++i) out[static_cast<std::size_t>(i)] = traj.params(i, k);
  return out;
}

}  // namespace

SweepResult run_training_sweep(const ExperimentContext& ctx, std::uint64_t seed) {
  const ExperimentConfig& cfg = ctx.config();
  const std::vector<int> rs = cfg.r_train.values();
  const std::size_t p = ctx.ansatz().param_count();

  SweepResult out;
  std::vector<ParamVector> columns;
  std::optional<ParamVector> prev;
  for (int r : rs) {
    const auto start = Clock::now();
    try {
      const StateVector target = ctx.trotter_target(r);
      const ParamVector init = prev ? *prev : random_init(p, seed);
      const TrainResult trained = train_step(ctx, target, r, seed, init, prev);
      RunRecord rec = base_record(ctx, target, r, seed);
      fill_trained(ctx, target, trained.params, rec);
      if (cfg.record_timing) rec.wall_time_s = seconds_since(start);
      out.records.push_back(rec);
      columns.push_back(trained.params);
      prev = trained.params;
    } catch (const std::exception& e) {
      out.failure = "training failed at r=" + std::to_string(r) + " (seed " +
                    std::to_string(seed) + "): " + e.what();
      break;
    }
  }

  out.trajectory.params.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.trajectory.params.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const Eigen::VectorXd>(columns[k].data(), static_cast<Eigen::Index>(p));
    out.trajectory.r_values.push_back(out.records[k].r);
  }
  return out;
}

SweepResult run_training_sweep(const ExperimentConfig& config, std::uint64_t seed) {
  return run_training_sweep(ExperimentContext(config), seed);
}

std::vector<double> extrapolate_params(const ExtrapolatorSpec& spec, const ParamTrajectory& traj,
                                       int r, bool* diverging) {
  traj.validate();
  if (traj.n_snapshots() == 0) throw std::invalid_argument("cannot extrapolate an empty trajectory");
  if (diverging) *diverging = false;
  ParamTrajectory data = spec.unwrap ? unwrap_periodic(traj, kParamPeriod) : traj;
  if (spec.window > 0 && spec.window < data.n_snapshots()) {
    const Eigen::Index drop = data.n_snapshots() - spec.window;
    data.params = data.params.rightCols(spec.window).eval();
    data.r_values.erase(data.r_values.begin(), data.r_values.begin() + drop);
  }

  switch (spec.kind) {
    case ExtrapolatorSpec::Kind::Identity:
      return column(data, data.n_snapshots() - 1);
    case ExtrapolatorSpec::Kind::Polynomial:
      return forecast_regression(fit_polynomial(data, spec.degree), r);
    case ExtrapolatorSpec::Kind::Exponential:
      return forecast_regression(fit_asymptotic(data, RegressionModel::Kind::Exponential), r);
    case ExtrapolatorSpec::Kind::Logarithmic:
      return forecast_regression(fit_asymptotic(data, RegressionModel::Kind::Logarithmic), r);
    case ExtrapolatorSpec::Kind::Dmd: {
      const DmdModel model = dmd_fit(data, spec.rank, spec.amplitudes);
      const DmdForecast f = dmd_forecast_at(model, r, spec.growth_bound);
      if (diverging) *diverging = f.diverging;
      if (!f.values.allFinite()) throw NumericalError("DMD forecast is not finite");
      return {f.values.data(), f.values.data() + f.values.size()};
    }
  }
  throw std::invalid_argument("unknown extrapolator kind");
}

std::vector<RunRecord> run_extrapolation(const ExperimentContext& ctx, const ParamTrajectory& traj,
                                         std::uint64_t seed) {
  traj.validate();
  const ExperimentConfig& cfg = ctx.config();
  if (traj.n_params() != static_cast<Eigen::Index>(ctx.ansatz().param_count())) {
    throw std::invalid_argument("trajectory has " + std::to_string(traj.n_params()) +
                                " parameters, ansatz expects " +
                                std::to_string(ctx.ansatz().param_count()));
  }
  if (traj.n_snapshots() == 0) throw std::invalid_argument("trajectory is empty");

  std::vector<RunRecord> out;
  const int last_trained = traj.r_values.back();
  std::optional<ParamVector> prev = column(traj, traj.n_snapshots() - 1);

  for (int r : cfg.r_eval.values()) {
    const auto start = Clock::now();
    const StateVector target = ctx.trotter_target(r);
    RunRecord rec = base_record(ctx, target, r, seed);

    const auto it = std::find(traj.r_values.begin(), traj.r_values.end(), r);
    if (it != traj.r_values.end()) {
      const ParamVector theta = column(traj, it - traj.r_values.begin());
      fill_trained(ctx, target, theta, rec);
    } else if (r > last_trained) {
      bool diverging = false;
      const ParamVector forecast = extrapolate_params(cfg.extrapolator, traj, r, &diverging);
      rec.forecast_diverging = diverging;
      rec.fid_extrapolated_exact = fidelity(ctx.ansatz().prepare(forecast), ctx.exact_state());
      if (cfg.refine || cfg.train_heldout) {
        // Refine starts from the forecast; the direct arm continues the
        // warm-start chain past the training range.
        const ParamVector& init = cfg.refine ? forecast : *prev;
        const TrainResult trained = train_step(ctx, target, r, seed, init, prev);
        fill_trained(ctx, target, trained.params, rec);
        prev = trained.params;
      }
    }
    if (cfg.record_timing) rec.wall_time_s = seconds_since(start);
    out.push_back(rec);
  }
  return out;
}

std::vector<RunRecord> run_extrapolation(const ExperimentConfig& config,
                                         const ParamTrajectory& traj, std::uint64_t seed) {
  return run_extrapolation(ExperimentContext(config), traj, seed);
}

void sort_records(std::vector<RunRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.r != b.r ? a.r < b.r : a.seed < b.seed;
  });
}

void for_each_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ExperimentContext ctx(config);
  const std::size_t n_seeds = config.seeds.size();
  std::vector<ParamTrajectory> trajectories(n_seeds);
  std::vector<std::vector<RunRecord>> per_seed(n_seeds);
  std::vector<std::optional<std::string>> failures(n_seeds);

  for_each_index(n_seeds, config.threads, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    try {
      SweepResult sweep = run_training_sweep(ctx, seed);
      trajectories[i] = sweep.trajectory;
      if (sweep.failure) {
        failures[i] = sweep.failure;
        per_seed[i] = std::move(sweep.records);
        return;
      }
      per_seed[i] = run_extrapolation(ctx, sweep.trajectory, seed);
    } catch (const std::exception& e) {
      failures[i] = "seed " + std::to_string(seed) + ": " + e.what();
    }
  });

  ExperimentResult out;
  out.trajectories = std::move(trajectories);
  for (std::size_t i = 0; i < n_seeds; ++i) {
    out.records.insert(out.records.end(), per_seed[i].begin(), per_seed[i].end());
    if (failures[i] && !out.failure) out.failure = failures[i];
  }
  sort_records(out.records);
  return out;
}

namespace {

std::optional<double> median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<RunRecord> median_summary(const std::vector<RunRecord>& records) {
  std::vector<int> rs;
  for (const auto& rec : records) rs.push_back(rec.r);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  std::vector<RunRecord> out;
  for (int r : rs) {
    std::vector<double> trotter, trained_exact, trained_target, extrapolated, wall;
    RunRecord row;
    row.r = r;
    for (const auto& rec : records) {
      if (rec.r != r) continue;
      ++row.seed;  // summary rows carry the seed count here
      trotter.push_back(rec.fid_trotter_exact);
      if (rec.fid_trained_exact) trained_exact.push_back(*rec.fid_trained_exact);
      if (rec.fid_trained_target) trained_target.push_back(*rec.fid_trained_target);
      if (rec.fid_extrapolated_exact) extrapolated.push_back(*rec.fid_extrapolated_exact);
      if (rec.wall_time_s) wall.push_back(*rec.wall_time_s);
      row.cx_trotter = rec.cx_trotter;
      row.cx_ansatz = rec.cx_ansatz;
      row.forecast_diverging = row.forecast_diverging || rec.forecast_diverging;
    }
    row.fid_trotter_exact = *median(trotter);
    row.fid_trained_exact = median(trained_exact);
    row.fid_trained_target = median(trained_target);
    row.fid_extrapolated_exact = median(extrapolated);
    row.wall_time_s = median(wall);
    out.push_back(row);
  }
  return out;
}

}  // namespace equitrot
