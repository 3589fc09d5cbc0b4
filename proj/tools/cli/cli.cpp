#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "equitrot/io.hpp"
#include "equitrot/metrics.hpp"
#include "equitrot/pipeline.hpp"
#include "equitrot/trotter.hpp"

namespace equitrot::cli {

namespace fs = std::filesystem;

namespace {

void note(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << '\n';
}

void check_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericalError("non-finite " + what);
}

}  // namespace

std::string trotter_compare_csv(const ExperimentConfig& config, std::ostream* log) {
  const auto& chain = config.chain;
  const StateVector input = trotter_input_state(config.trotter_compare.initial_state, chain.n_qubits);
  const StateVector exact = exact_evolve(chain, input);
  const auto& schemes = config.trotter_compare.schemes;
  const int r_max = config.trotter_compare.r_max;

  std::vector<std::vector<std::string>> rows(schemes.size());
  for_each_index(schemes.size(), config.threads, [&](std::size_t s) {
    const TrotterScheme& scheme = schemes[s];
    for (int r = 1; r <= r_max; ++r) {
      const Circuit circuit = build_trotter_circuit(chain, scheme, r);
      const StateVector psi = run_circuit(circuit, input);
      const double f = fidelity(psi, exact);
      const double s2 = spin_squared_expectation(psi);
      check_finite(f, "fidelity for " + scheme.name());
      rows[s].push_back(scheme.name() + "," + std::to_string(r) + "," + format_real(f) + "," +
                        std::to_string(cx_count(circuit)) + "," + format_real(s2));
    }
    note(log, "trotter-compare: " + scheme.name() + " done");
  });

  std::string out = std::string(kTrotterCompareHeader) + "\n";
  for (const auto& block : rows)
    for (const auto& line : block) out += line + "\n";
  return out;
}

std::string ansatz_metrics_csv(const ExperimentConfig& config, std::ostream* log) {
  const auto& m = config.metrics;
  const std::uint64_t seed = config.seeds.front();
  struct Cell {
    AnsatzSpec spec;
    std::string line;
  };
  std::vector<Cell> cells;
  for (Topology t : m.topologies) {
    for (int layers = m.min_layers; layers <= m.max_layers; ++layers) {
      AnsatzSpec spec;
      spec.n_qubits = config.chain.n_qubits;
      spec.layers = layers;
      spec.topology = t;
      spec.initial_state = is_su2(t) ? InitialState::Singlet : m.general_initial_state;
      cells.push_back({spec, {}});
    }
  }
  for_each_index(cells.size(), config.threads, [&](std::size_t i) {
    const AnsatzSpec& spec = cells[i].spec;
    const MetricSample ent = entangling_capability(spec, m.samples, seed);
    const MetricSample kl = expressibility_kl(spec, m.pairs, m.bins, seed);
    check_finite(ent.value, "entangling capability");
    check_finite(kl.value, "expressibility");
    std::ostringstream line;
    line << topology_name(spec.topology) << ',' << spec.layers << ',' << spec.n_qubits << ','
         << initial_state_name(spec.initial_state) << ',' << format_real(ent.value) << ','
         << format_real(kl.value) << ',' << m.samples << ',' << m.pairs << ',' << m.bins << ','
         << seed;
    cells[i].line = line.str();
    note(log, "ansatz-metrics: " + topology_name(spec.topology) + " L=" +
                  std::to_string(spec.layers));
  });

  std::string out = std::string(kMetricsHeader) + "\n";
  for (const auto& c : cells) out += c.line + "\n";
  return out;
}

void cmd_trotter_compare(const ExperimentConfig& config, std::ostream* log) {
  const fs::path path = fs::path(config.output_dir) / "trotter_compare.csv";
  write_text_file(path.string(), trotter_compare_csv(config, log));
  note(log, "wrote " + path.string());
}

void cmd_ansatz_metrics(const ExperimentConfig& config, std::ostream* log) {
  const fs::path path = fs::path(config.output_dir) / "metrics.csv";
  write_text_file(path.string(), ansatz_metrics_csv(config, log));
  note(log, "wrote " + path.string());
}

bool cmd_train_sweep(const ExperimentConfig& config, std::ostream* log) {
  const ExperimentContext ctx(config);
  std::vector<SweepResult> sweeps(config.seeds.size());
  for_each_index(sweeps.size(), config.threads, [&](std::size_t i) {
    sweeps[i] = run_training_sweep(ctx, config.seeds[i]);
    note(log, "train-sweep: seed " + std::to_string(config.seeds[i]) + " done");
  });

  std::vector<RunRecord> records;
  std::vector<ParamTrajectory> trajectories;
  bool ok = true;
  for (auto& s : sweeps) {
    records.insert(records.end(), s.records.begin(), s.records.end());
    trajectories.push_back(std::move(s.trajectory));
    if (s.failure) {
      ok = false;
      note(log, "train-sweep: " + *s.failure);
    }
  }
  sort_records(records);
  write_results(records, trajectories, config);
  note(log, "wrote " + config.output_dir);
  return ok;
}

void cmd_extrapolate(const ExperimentConfig& config, std::ostream* log) {
  std::vector<ParamTrajectory> trajectories;
  for (std::uint64_t seed : config.seeds) {
    const fs::path path = fs::path(config.output_dir) / trajectory_filename(seed);
    if (!fs::exists(path)) {
      throw UsageError("missing trajectory " + path.string() + " (run train-sweep first)");
    }
    trajectories.push_back(load_trajectory(path.string()));
  }

  const ExperimentContext ctx(config);
  std::vector<std::vector<RunRecord>> per_seed(config.seeds.size());
  for_each_index(per_seed.size(), config.threads, [&](std::size_t i) {
    per_seed[i] = run_extrapolation(ctx, trajectories[i], config.seeds[i]);
    note(log, "extrapolate: seed " + std::to_string(config.seeds[i]) + " done");
  });
  std::vector<RunRecord> records;
  for (const auto& v : per_seed) records.insert(records.end(), v.begin(), v.end());
  sort_records(records);
  write_results(records, trajectories, config);
  note(log, "wrote " + config.output_dir);
}

std::string cmd_report(const std::string& dir) {
  const fs::path path = fs::path(dir) / "results.csv";
  if (!fs::exists(path)) throw UsageError("missing " + path.string());
  return render_report(load_records(path.string()));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant Trotter circuit training and parameter extrapolation", "equitrot"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> output;
  bool verbose = false;
  app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Run a single seed instead of the configured list");
  app.add_option("--threads", threads, "Worker cap")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Output directory");
  app.add_flag("--verbose", verbose, "Progress on stderr");

  auto* trotter = app.add_subcommand("trotter-compare", "Trotter fidelity vs step count");
  auto* metrics = app.add_subcommand("ansatz-metrics", "Entangling capability and expressibility");
  auto* sweep = app.add_subcommand("train-sweep", "Warm-started training over r_train");
  auto* extrap = app.add_subcommand("extrapolate", "Forecast parameters over r_eval");
  auto* report = app.add_subcommand("report", "Summary table from results.csv");
  std::optional<std::string> report_dir;
  report->add_option("dir", report_dir, "Directory holding results.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ostream* log = verbose ? &err : nullptr;
  try {
    if (report->parsed()) {
      std::string dir;
      if (report_dir) dir = *report_dir;
      else if (output) dir = *output;
      else dir = config_path.empty() ? default_config().output_dir : load_config(config_path).output_dir;
      out << cmd_report(dir);
      return kExitOk;
    }

    ExperimentConfig config = config_path.empty() ? default_config() : load_config(config_path);
    if (seed) config.seeds = {*seed};
    if (threads) config.threads = *threads;
    if (output) config.output_dir = *output;
    config.validate();

    if (trotter->parsed()) cmd_trotter_compare(config, log);
    if (metrics->parsed()) cmd_ansatz_metrics(config, log);
    if (extrap->parsed()) cmd_extrapolate(config, log);
    if (sweep->parsed() && !cmd_train_sweep(config, log)) {
      err << "equitrot: training stopped early; partial results written\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "equitrot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "equitrot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "equitrot: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "equitrot: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace equitrot::cli
