#include "equitrot/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace equitrot {

namespace fs = std::filesystem;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_optional(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& field, const std::string& origin, std::size_t line) {
  T value{};
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw IoError(origin + ":" + std::to_string(line) + ": cannot parse '" + field + "'");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& field, const std::string& origin,
                                     std::size_t line) {
  if (field.empty()) return std::nullopt;
  return parse_number<double>(field, origin, line);
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.r) + "," + std::to_string(rec.seed) + "," +
           format_real(rec.fid_trotter_exact) + "," + format_optional(rec.fid_trained_exact) + "," +
           format_optional(rec.fid_trained_target) + "," +
           format_optional(rec.fid_extrapolated_exact) + "," + std::to_string(rec.cx_trotter) +
           "," + std::to_string(rec.cx_ansatz) + "," + format_optional(rec.wall_time_s) + "\n";
  }
  return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text, const std::string& origin) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kResultsHeader) {
    throw IoError(origin + ": missing or unexpected results header");
  }
  std::vector<RunRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 9) {
      throw IoError(origin + ":" + std::to_string(i + 1) + ": expected 9 fields, found " +
                    std::to_string(f.size()));
    }
    RunRecord rec;
    rec.r = parse_number<int>(f[0], origin, i + 1);
    rec.seed = parse_number<std::uint64_t>(f[1], origin, i + 1);
    rec.fid_trotter_exact = parse_number<double>(f[2], origin, i + 1);
    rec.fid_trained_exact = parse_optional(f[3], origin, i + 1);
    rec.fid_trained_target = parse_optional(f[4], origin, i + 1);
    rec.fid_extrapolated_exact = parse_optional(f[5], origin, i + 1);
    rec.cx_trotter = parse_number<long>(f[6], origin, i + 1);
    rec.cx_ansatz = parse_number<long>(f[7], origin, i + 1);
    rec.wall_time_s = parse_optional(f[8], origin, i + 1);
    out.push_back(rec);
  }
  return out;
}

std::string trajectory_to_csv(const ParamTrajectory& traj) {
  traj.validate();
  std::string out = "r";
  for (Eigen::Index i = 0; i < traj.n_params(); ++i) out += ",theta_" + std::to_string(i);
  out += "\n";
  for (Eigen::Index k = 0; k < traj.n_snapshots(); ++k) {
    out += std::to_string(traj.r_values[static_cast<std::size_t>(k)]);
    for (Eigen::Index i = 0; i < traj.n_params(); ++i) out += "," + format_real(traj.params(i, k));
    out += "\n";
  }
  return out;
}

ParamTrajectory trajectory_from_csv(const std::string& text, const std::string& origin) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw IoError(origin + ": empty trajectory file");
  const auto header = split(lines[0], ',');
  if (header.empty() || header[0] != "r") throw IoError(origin + ": header must start with 'r'");
  const std::size_t p = header.size() - 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (header[i + 1] != "theta_" + std::to_string(i)) {
      throw IoError(origin + ": unexpected column '" + header[i + 1] + "'");
    }
  }
  ParamTrajectory traj;
  traj.params.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(lines.size() - 1));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = split(lines[k], ',');
    if (f.size() != p + 1) {
      throw IoError(origin + ":" + std::to_string(k + 1) + ": expected " + std::to_string(p + 1) +
                    " fields");
    }
    traj.r_values.push_back(parse_number<int>(f[0], origin, k + 1));
    for (std::size_t i = 0; i < p; ++i) {
      traj.params(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1)) =
          parse_number<double>(f[i + 1], origin, k + 1);
    }
  }
  try {
    traj.validate();
  } catch (const std::invalid_argument& e) {
    throw IoError(origin + ": " + e.what());
  }
  return traj;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out.flush()) throw IoError("write failed for " + path);
}

void write_records(const std::string& path, const std::vector<RunRecord>& records) {
  write_text_file(path, records_to_csv(records));
}

std::vector<RunRecord> load_records(const std::string& path) {
  return records_from_csv(read_text_file(path), path);
}

void write_trajectory(const std::string& path, const ParamTrajectory& traj) {
  write_text_file(path, trajectory_to_csv(traj));
}

ParamTrajectory load_trajectory(const std::string& path) {
  return trajectory_from_csv(read_text_file(path), path);
}

std::string trajectory_filename(std::uint64_t seed) {
  return "trajectory_seed" + std::to_string(seed) + ".csv";
}

namespace {

std::string summary_to_csv(const std::vector<RunRecord>& rows) {
  std::string out =
      "r,n_seeds,fid_trotter_exact,fid_trained_exact,fid_trained_target,"
      "fid_extrapolated_exact,cx_trotter,cx_ansatz,forecast_diverging\n";
  for (const auto& row : rows) {
    out += std::to_string(row.r) + "," + std::to_string(row.seed) + "," +
           format_real(row.fid_trotter_exact) + "," + format_optional(row.fid_trained_exact) + "," +
           format_optional(row.fid_trained_target) + "," +
           format_optional(row.fid_extrapolated_exact) + "," + std::to_string(row.cx_trotter) +
           "," + std::to_string(row.cx_ansatz) + "," + (row.forecast_diverging ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace

void write_results(const std::vector<RunRecord>& records,
                   const std::vector<ParamTrajectory>& trajectories,
                   const ExperimentConfig& config) {
  const fs::path dir(config.output_dir);
  write_records((dir / "results.csv").string(), records);
  write_text_file((dir / "summary.csv").string(), summary_to_csv(median_summary(records)));
  write_text_file((dir / "config.json").string(), config_to_json(config));
  for (std::size_t i = 0; i < trajectories.size() && i < config.seeds.size(); ++i) {
    if (trajectories[i].n_snapshots() == 0) continue;
    write_trajectory((dir / trajectory_filename(config.seeds[i])).string(), trajectories[i]);
  }
}

namespace {

std::string cell(const std::optional<double>& v, int width) {
  char buf[32];
  if (v) {
    std::snprintf(buf, sizeof buf, "%*.4f", width, *v);
  } else {
    std::snprintf(buf, sizeof buf, "%*s", width, "-");
  }
  return buf;
}

std::string cell(double v, int width) { return cell(std::optional<double>(v), width); }

std::string cell(long v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%*ld", width, v);
  return buf;
}

}  // namespace

std::string render_report(const std::vector<RunRecord>& records) {
  if (records.empty()) throw IoError("no records to report");
  const auto rows = median_summary(records);
  std::string out;
  out += "Median over seeds per Trotter step count\n\n";
  out += "   r  seeds   trotter   trained  trn/tgt    extrap  cx_trotter  cx_ansatz\n";
  for (const auto& row : rows) {
    out += cell(static_cast<long>(row.r), 4) + cell(static_cast<long>(row.seed), 7) +
           cell(row.fid_trotter_exact, 10) + cell(row.fid_trained_exact, 10) +
           cell(row.fid_trained_target, 9) + cell(row.fid_extrapolated_exact, 10) +
           cell(row.cx_trotter, 12) + cell(row.cx_ansatz, 11) +
           (row.forecast_diverging ? "  (diverging)" : "") + "\n";
  }
  const RunRecord& last = rows.back();
  out += "\nAt r = " + std::to_string(last.r) + ":\n";
  out += "  Trotter        fidelity " + cell(last.fid_trotter_exact, 0) + "  CX " +
         std::to_string(last.cx_trotter) + "\n";
  out += "  Training       fidelity " + cell(last.fid_trained_exact, 0) + "  CX " +
         std::to_string(last.cx_ansatz) + "\n";
  out += "  Extrapolation  fidelity " + cell(last.fid_extrapolated_exact, 0) + "  CX " +
         std::to_string(last.cx_ansatz) + "\n";
  if (last.fid_extrapolated_exact) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.4f", *last.fid_extrapolated_exact - last.fid_trotter_exact);
    out += "  Extrapolation minus Trotter: " + std::string(buf) + "\n";
  }
  return out;
}

}  // namespace equitrot
