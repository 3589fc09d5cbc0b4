// results.csv, trajectory.csv and config echo persistence.
//
// results.csv columns: r, seed, fid_trotter_exact, fid_trained_exact,
// fid_trained_target, fid_extrapolated_exact, cx_trotter, cx_ansatz,
// wall_time_s. Missing values are empty fields. Reals use 17 significant
// digits, so reading a file back reproduces every double exactly.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "equitrot/pipeline.hpp"

namespace equitrot {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kResultsHeader =
    "r,seed,fid_trotter_exact,fid_trained_exact,fid_trained_target,"
    "fid_extrapolated_exact,cx_trotter,cx_ansatz,wall_time_s";

std::string format_real(double v);

std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text, const std::string& origin);

std::string trajectory_to_csv(const ParamTrajectory& traj);
ParamTrajectory trajectory_from_csv(const std::string& text, const std::string& origin);

std::string read_text_file(const std::string& path);
/// Creates missing parent directories.
void write_text_file(const std::string& path, const std::string& text);

void write_records(const std::string& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> load_records(const std::string& path);
void write_trajectory(const std::string& path, const ParamTrajectory& traj);
ParamTrajectory load_trajectory(const std::string& path);

std::string trajectory_filename(std::uint64_t seed);

/// Writes results.csv, summary.csv, config.json and one trajectory file per
/// seed into config.output_dir.
void write_results(const std::vector<RunRecord>& records,
                   const std::vector<ParamTrajectory>& trajectories,
                   const ExperimentConfig& config);

/// Plain-text table of per-r medians plus a headline row at the largest r.
std::string render_report(const std::vector<RunRecord>& records);

}  // namespace equitrot
