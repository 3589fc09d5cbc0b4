// Forecasting trained parameters across Trotter-step counts.
//
// A trajectory stores one parameter vector per trained step count as the
// columns of a p x m matrix. Regression models fit every parameter row on
// its own; DMD fits a single linear propagator to the whole column sequence.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace equitrot {

struct ParamTrajectory {
  Eigen::MatrixXd params;   // p x m, column k = theta at r_values[k]
  std::vector<int> r_values;

  Eigen::Index n_params() const { return params.rows(); }
  Eigen::Index n_snapshots() const { return params.cols(); }

  /// Column count matches r_values, r strictly increasing, entries finite.
  void validate() const;
  /// Uniform spacing of r_values (needed by DMD); throws otherwise.
  int step() const;
};

/// Shifts each entry by a multiple of `period` so consecutive columns are as
/// close as possible. Leaves the represented circuits unchanged.
ParamTrajectory unwrap_periodic(const ParamTrajectory& traj, double period);

struct RegressionModel {
  enum class Kind { Polynomial, Exponential, Logarithmic };

  Kind kind = Kind::Polynomial;
  int degree = 1;
  /// Polynomial: p x (degree+1), ascending powers of r.
  /// Exponential (a + b e^{-c r}) and Logarithmic (a + b log(r + c)):
  /// p x 3 holding (a, b, c).
  Eigen::MatrixXd coefficients;
  /// Root-mean-square fit residual per parameter row.
  Eigen::VectorXd residuals;
};

std::string regression_kind_name(RegressionModel::Kind kind);

/// Least-squares polynomial in r per parameter row. Needs m > degree.
RegressionModel fit_polynomial(const ParamTrajectory& traj, int degree);

/// Per-row fit of a + b e^{-c r} or a + b log(r + c): c is scanned over 64
/// log-spaced values in [0.01, 5] with (a, b) solved linearly at each.
RegressionModel fit_asymptotic(const ParamTrajectory& traj, RegressionModel::Kind kind);

/// Evaluates the fitted functions at r_target without clamping.
std::vector<double> forecast_regression(const RegressionModel& model, double r_target);

struct RankPolicy {
  enum class Kind { Fixed, EnergyThreshold };
  Kind kind = Kind::EnergyThreshold;
  int rank = 0;
  double threshold = 1.0 - 1e-10;

  static RankPolicy fixed(int r) { return {Kind::Fixed, r, 0.0}; }
  static RankPolicy energy(double tau) { return {Kind::EnergyThreshold, 0, tau}; }
};

enum class AmplitudeFit { FirstSnapshot, AllSnapshots };

struct DmdModel {
  Eigen::MatrixXcd modes;        // p x rank
  Eigen::VectorXcd eigenvalues;  // rank
  Eigen::VectorXcd amplitudes;   // rank
  Eigen::VectorXd singular_values;  // full spectrum of X
  int rank = 0;
  int r_base = 0;  // step count of the first snapshot
  int r_step = 1;
  Eigen::MatrixXd reduced_operator;  // U* X' V Sigma^{-1}
};

/// Exact DMD on consecutive snapshots (X, X'). Throws std::invalid_argument
/// for m < 3 and NumericalError for a zero spectrum or empty rank.
DmdModel dmd_fit(const ParamTrajectory& traj, const RankPolicy& policy = {},
                 AmplitudeFit amplitude_fit = AmplitudeFit::FirstSnapshot);

struct DmdForecast {
  Eigen::VectorXd values;
  /// max |imag| of Phi Lambda^{k-1} b before taking the real part.
  double imag_residue = 0.0;
  /// Some retained mode has |lambda| above the growth bound.
  bool diverging = false;
};

inline constexpr double kDefaultGrowthBound = 1.05;

/// Phi Lambda^{k-1} b; k = 1 reproduces the first snapshot.
DmdForecast dmd_forecast(const DmdModel& model, int k, double growth_bound = kDefaultGrowthBound);

/// Forecast at step count r, i.e. k = (r - r_base) / r_step + 1.
DmdForecast dmd_forecast_at(const DmdModel& model, int r,
                            double growth_bound = kDefaultGrowthBound);

}  // namespace equitrot
