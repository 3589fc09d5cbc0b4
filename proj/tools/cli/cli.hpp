// equitrot command line: one subcommand per pipeline stage.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or config error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "equitrot/config.hpp"

namespace equitrot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kTrotterCompareHeader = "scheme,r,fidelity,cx_count,spin_squared";
inline constexpr const char* kMetricsHeader =
    "topology,layers,n_qubits,initial_state,entangling_capability,expressibility_kl,"
    "samples,pairs,bins,seed";

/// Missing or unusable input; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fidelity vs r from trotter_compare.initial_state for every configured scheme, rows ordered by scheme (as
/// listed in the config) then r.
std::string trotter_compare_csv(const ExperimentConfig& config, std::ostream* log = nullptr);

/// Entangling capability and expressibility over the (topology, layers)
/// grid.
std::string ansatz_metrics_csv(const ExperimentConfig& config, std::ostream* log = nullptr);

void cmd_trotter_compare(const ExperimentConfig& config, std::ostream* log = nullptr);
void cmd_ansatz_metrics(const ExperimentConfig& config, std::ostream* log = nullptr);
/// Returns false when some seed stopped early; completed steps are still
/// written.
bool cmd_train_sweep(const ExperimentConfig& config, std::ostream* log = nullptr);
void cmd_extrapolate(const ExperimentConfig& config, std::ostream* log = nullptr);
std::string cmd_report(const std::string& dir);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equitrot::cli
