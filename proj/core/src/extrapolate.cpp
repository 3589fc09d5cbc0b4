#include "equitrot/extrapolate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "equitrot/state.hpp"

namespace equitrot {

void ParamTrajectory::validate() const {
  if (static_cast<std::size_t>(params.cols()) != r_values.size()) {
    throw std::invalid_argument("trajectory has " + std::to_string(params.cols()) +
                                " columns but " + std::to_string(r_values.size()) + " r values");
  }
  for (std::size_t k = 1; k < r_values.size(); ++k) {
    if (r_values[k] <= r_values[k - 1]) {
      throw std::invalid_argument("trajectory r values must be strictly increasing");
    }
  }
  if (!params.allFinite()) throw std::invalid_argument("trajectory contains non-finite entries");
}

int ParamTrajectory::step() const {
  if (r_values.size() < 2) return 1;
  const int s = r_values[1] - r_values[0];
  for (std::size_t k = 2; k < r_values.size(); ++k) {
    if (r_values[k] - r_values[k - 1] != s) {
      throw std::invalid_argument("trajectory r values are not uniformly spaced");
    }
  }
  return s;
}

ParamTrajectory unwrap_periodic(const ParamTrajectory& traj, double period) {
  ParamTrajectory out = traj;
  for (Eigen::Index k = 1; k < out.params.cols(); ++k) {
    for (Eigen::Index i = 0; i < out.params.rows(); ++i) {
      const double prev = out.params(i, k - 1);
      double& x = out.params(i, k);
      x += std::round((prev - x) / period) * period;
    }
  }
  return out;
}

std::string regression_kind_name(RegressionModel::Kind kind) {
  switch (kind) {
    case RegressionModel::Kind::Polynomial: return "polynomial";
    case RegressionModel::Kind::Exponential: return "exponential";
    case RegressionModel::Kind::Logarithmic: return "logarithmic";
  }
  return "unknown";
}

namespace {

Eigen::VectorXd r_vector(const ParamTrajectory& traj) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(traj.r_values.size()));
  for (std::size_t k = 0; k < traj.r_values.size(); ++k) {
    r[static_cast<Eigen::Index>(k)] = traj.r_values[k];
  }
  return r;
}

Eigen::VectorXd row_rms(const Eigen::MatrixXd& residual) {
  return (residual.rowwise().squaredNorm() / static_cast<double>(residual.cols())).cwiseSqrt();
}

double asymptotic_basis(RegressionModel::Kind kind, double r, double c) {
  return kind == RegressionModel::Kind::Exponential ? std::exp(-c * r) : std::log(r + c);
}

}  // namespace

RegressionModel fit_polynomial(const ParamTrajectory& traj, int degree) {
  traj.validate();
  if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  const Eigen::Index m = traj.n_snapshots();
  if (m <= degree) {
    throw std::invalid_argument("polynomial of degree " + std::to_string(degree) + " needs more than " +
                                std::to_string(degree) + " snapshots");
  }
  const Eigen::VectorXd r = r_vector(traj);
  Eigen::MatrixXd design(m, degree + 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    double pw = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(k, d) = pw;
      pw *= r[k];
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < degree + 1) throw NumericalError("rank-deficient polynomial design matrix");
  RegressionModel model;
  model.kind = RegressionModel::Kind::Polynomial;
  model.degree = degree;
  model.coefficients = qr.solve(traj.params.transpose()).transpose();
  model.residuals = row_rms(model.coefficients * design.transpose() - traj.params);
  return model;
}

RegressionModel fit_asymptotic(const ParamTrajectory& traj, RegressionModel::Kind kind) {
  traj.validate();
  if (kind == RegressionModel::Kind::Polynomial) {
    throw std::invalid_argument("fit_asymptotic takes the exponential or logarithmic kind");
  }
  const Eigen::Index m = traj.n_snapshots();
  const Eigen::Index p = traj.n_params();
  if (m < 4) throw std::invalid_argument("asymptotic fit needs at least 4 snapshots");
  const Eigen::VectorXd r = r_vector(traj);

  RegressionModel model;
  model.kind = kind;
  model.coefficients = Eigen::MatrixXd::Zero(p, 3);
  model.residuals = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::infinity());

  constexpr int kGrid = 64;
  const double lo = std::log(0.01), hi = std::log(5.0);
  for (int g = 0; g < kGrid; ++g) {
    const double c = std::exp(lo + (hi - lo) * g / (kGrid - 1));
    Eigen::MatrixXd design(m, 2);
    for (Eigen::Index k = 0; k < m; ++k) {
      design(k, 0) = 1.0;
      design(k, 1) = asymptotic_basis(kind, r[k], c);
    }
    if (!design.allFinite()) continue;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 2) continue;
    const Eigen::MatrixXd ab = qr.solve(traj.params.transpose());  // 2 x p
    const Eigen::VectorXd rms = row_rms(ab.transpose() * design.transpose() - traj.params);
    for (Eigen::Index i = 0; i < p; ++i) {
      if (std::isfinite(rms[i]) && rms[i] < model.residuals[i]) {
        model.residuals[i] = rms[i];
        model.coefficients(i, 0) = ab(0, i);
        model.coefficients(i, 1) = ab(1, i);
        model.coefficients(i, 2) = c;
      }
    }
  }
  if (!model.residuals.allFinite()) {
    throw NumericalError("asymptotic fit failed for every decay constant");
  }
  return model;
}

std::vector<double> forecast_regression(const RegressionModel& model, double r_target) {
  const Eigen::Index p = model.coefficients.rows();
  std::vector<double> out(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    double v = 0.0;
    if (model.kind == RegressionModel::Kind::Polynomial) {
      for (Eigen::Index d = model.coefficients.cols(); d-- > 0;) {
        v = v * r_target + model.coefficients(i, d);
      }
    } else {
      const auto& c = model.coefficients;
      v = c(i, 0) + c(i, 1) * asymptotic_basis(model.kind, r_target, c(i, 2));
    }
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

namespace {

int choose_rank(const Eigen::VectorXd& sigma, const RankPolicy& policy, int max_rank) {
  // Singular values at round-off level carry no dynamics and would blow up
  // Sigma^{-1}.
  const double floor = sigma[0] * 1e-13;
  int numerical = 0;
  while (numerical < sigma.size() && sigma[numerical] > floor) ++numerical;

  int rank = 0;
  if (policy.kind == RankPolicy::Kind::Fixed) {
    if (policy.rank < 1 || policy.rank > max_rank) {
      throw std::invalid_argument("fixed DMD rank " + std::to_string(policy.rank) +
                                  " outside [1, " + std::to_string(max_rank) + "]");
    }
    rank = policy.rank;
  } else {
    if (!(policy.threshold > 0.0) || policy.threshold > 1.0) {
      throw std::invalid_argument("energy threshold must lie in (0, 1]");
    }
    const double total = sigma.squaredNorm();
    double acc = 0.0;
    for (rank = 0; rank < sigma.size();) {
      acc += sigma[rank] * sigma[rank];
      ++rank;
      if (acc >= policy.threshold * total) break;
    }
  }
  rank = std::min(rank, numerical);
  if (rank < 1) throw NumericalError("DMD rank collapsed to zero");
  return rank;
}

Eigen::VectorXcd powers(const Eigen::VectorXcd& lambda, int exponent) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(lambda.size());
  for (int e = 0; e < exponent; ++e) out = out.cwiseProduct(lambda);
  return out;
}

}  // namespace

DmdModel dmd_fit(const ParamTrajectory& traj, const RankPolicy& policy, AmplitudeFit amplitude_fit) {
  traj.validate();
  const Eigen::Index m = traj.n_snapshots();
  const Eigen::Index p = traj.n_params();
  if (m < 3) throw std::invalid_argument("DMD needs at least 3 snapshots");
  const int r_step = traj.step();

  const Eigen::MatrixXd x = traj.params.leftCols(m - 1);
  const Eigen::MatrixXd xp = traj.params.rightCols(m - 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (sigma.size() == 0 || !(sigma[0] > 0.0)) throw NumericalError("zero singular spectrum");

  const int max_rank = static_cast<int>(std::min(p, m - 1));
  const int rank = choose_rank(sigma, policy, max_rank);

  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXd v = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd inv_sigma = sigma.head(rank).cwiseInverse();
  const Eigen::MatrixXd xp_v_sinv = xp * v * inv_sigma.asDiagonal();

  DmdModel model;
  model.reduced_operator = u.transpose() * xp_v_sinv;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(model.reduced_operator);
  if (eig.info() != Eigen::Success) throw NumericalError("DMD eigendecomposition failed");
  model.eigenvalues = eig.eigenvalues();
  model.modes = xp_v_sinv.cast<std::complex<double>>() * eig.eigenvectors();
  model.singular_values = sigma;
  model.rank = rank;
  model.r_base = traj.r_values.front();
  model.r_step = r_step;

  if (amplitude_fit == AmplitudeFit::FirstSnapshot) {
    const Eigen::VectorXcd x1 = traj.params.col(0).cast<std::complex<double>>();
    model.amplitudes = model.modes.completeOrthogonalDecomposition().solve(x1);
  } else {
    Eigen::MatrixXcd stacked(p * m, rank);
    Eigen::VectorXcd rhs(p * m);
    for (Eigen::Index k = 0; k < m; ++k) {
      stacked.middleRows(k * p, p) =
          model.modes * powers(model.eigenvalues, static_cast<int>(k)).asDiagonal();
      rhs.segment(k * p, p) = traj.params.col(k).cast<std::complex<double>>();
    }
    model.amplitudes = stacked.completeOrthogonalDecomposition().solve(rhs);
  }
  if (!model.modes.allFinite() || !model.amplitudes.allFinite()) {
    throw NumericalError("DMD produced non-finite modes");
  }
  return model;
}

DmdForecast dmd_forecast(const DmdModel& model, int k, double growth_bound) {
  if (k < 1) throw std::invalid_argument("DMD forecast index must be >= 1");
  const Eigen::VectorXcd coeff = powers(model.eigenvalues, k - 1).cwiseProduct(model.amplitudes);
  const Eigen::VectorXcd x = model.modes * coeff;
  DmdForecast out;
  out.values = x.real();
  out.imag_residue = x.size() ? x.imag().cwiseAbs().maxCoeff() : 0.0;
  out.diverging = model.eigenvalues.size() && model.eigenvalues.cwiseAbs().maxCoeff() > growth_bound;
  return out;
}

DmdForecast dmd_forecast_at(const DmdModel& model, int r, double growth_bound) {
  const int offset = r - model.r_base;
  if (offset < 0 || offset % model.r_step != 0) {
    throw std::invalid_argument("step count " + std::to_string(r) +
                                " is not on the snapshot grid");
  }
  return dmd_forecast(model, offset / model.r_step + 1, growth_bound);
}

}  // namespace equitrot
