// Declarative experiment description and its JSON form.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equitrot/ansatz.hpp"
#include "equitrot/extrapolate.hpp"
#include "equitrot/heisenberg.hpp"
#include "equitrot/metrics.hpp"
#include "equitrot/optimize.hpp"
#include "equitrot/trotter.hpp"

namespace equitrot {

/// Inclusive integer range [first, last].
struct IntRange {
  int first = 1;
  int last = 1;

  std::vector<int> values() const;
  bool contains(int r) const { return r >= first && r <= last; }
  std::size_t size() const { return last >= first ? static_cast<std::size_t>(last - first + 1) : 0; }
};

struct ExtrapolatorSpec {
  enum class Kind { Dmd, Polynomial, Exponential, Logarithmic, Identity };

  Kind kind = Kind::Dmd;
  RankPolicy rank;
  AmplitudeFit amplitudes = AmplitudeFit::FirstSnapshot;
  int degree = 2;
  /// Remove 4pi jumps between consecutive columns before fitting.
  bool unwrap = true;
  /// Fit on the most recent `window` snapshots only; 0 uses all of them.
  int window = 6;
  double growth_bound = kDefaultGrowthBound;
};

std::string extrapolator_kind_name(ExtrapolatorSpec::Kind kind);
ExtrapolatorSpec::Kind parse_extrapolator_kind(const std::string& name);

struct TrotterCompareSpec {
  enum class Input { Singlet, Neel, DomainWall };

  int r_max = 100;
  Input initial_state = Input::DomainWall;
  std::vector<TrotterScheme> schemes{TrotterScheme::standard_first_order(),
                                     TrotterScheme::optimized_first_order(),
                                     TrotterScheme::optimized_second_order()};
};

std::string trotter_input_name(TrotterCompareSpec::Input input);
TrotterCompareSpec::Input parse_trotter_input(const std::string& name);
StateVector trotter_input_state(TrotterCompareSpec::Input input, int n_qubits);

struct MetricsSpec {
  int min_layers = 1;
  int max_layers = 8;
  std::vector<Topology> topologies{Topology::LinearSU2, Topology::BrickwallSU2,
                                   Topology::GeneralLinear, Topology::GeneralBrickwall};
  int samples = 1000;  // parameter draws for entangling capability
  int pairs = 1000;    // state pairs for expressibility
  int bins = kDefaultKlBins;
  /// Input for the non-equivariant topologies; SU(2) ones use the singlet.
  InitialState general_initial_state = InitialState::AllZero;
};

struct ExperimentConfig {
  SpinChainSpec chain;
  AnsatzSpec ansatz;
  TrotterScheme scheme = TrotterScheme::optimized_first_order();
  IntRange r_train{1, 14};
  IntRange r_eval{1, 18};
  LossSpec loss{.kind = LossSpec::Kind::FixedRegularized, .previous_params = std::nullopt};
  OptimizerSpec optimizer;
  ExtrapolatorSpec extrapolator;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::string output_dir = "results";
  /// Retrain held-out step counts starting from the forecast.
  bool refine = false;
  /// Train held-out step counts directly (warm-started from the last
  /// trained column) to fill the trained-fidelity columns.
  bool train_heldout = true;
  /// Fill wall_time_s; off by default so results.csv is reproducible.
  bool record_timing = false;
  int threads = 1;
  TrotterCompareSpec trotter_compare;
  MetricsSpec metrics;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Defaults for an n-qubit chain (ansatz depth from default_layers).
ExperimentConfig default_config(int n_qubits = 8);

/// Parses a JSON document; absent fields keep their defaults, unknown keys
/// are rejected.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON rendering of every field (sorted keys, two-space indent).
std::string config_to_json(const ExperimentConfig& config);

}  // namespace equitrot
