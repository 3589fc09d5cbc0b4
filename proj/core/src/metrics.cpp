#include "equitrot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace equitrot {

double meyer_wallach(const StateVector& state) {
  const int n = state.n_qubits();
  if (n < 2) throw std::invalid_argument("Meyer-Wallach measure needs at least 2 qubits");
  double purity_sum = 0.0;
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2cd rho = reduced_density_1q(state, q);
    purity_sum += (rho * rho).trace().real();
  }
  return std::clamp(2.0 - 2.0 * purity_sum / n, 0.0, 1.0);
}

namespace {

std::vector<double> random_params(std::size_t count, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 4.0 * std::numbers::pi);
  std::vector<double> p(count);
  for (auto& v : p) v = angle(rng);
  return p;
}

}  // namespace

MetricSample entangling_capability(const AnsatzSpec& spec, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  const Ansatz ansatz(spec);
  Rng rng(seed);
  double acc = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    acc += meyer_wallach(ansatz.prepare(random_params(ansatz.param_count(), rng)));
  }
  return {acc / n_samples, n_samples, seed};
}

std::vector<double> haar_fidelity_bin_probabilities(std::size_t dim, int bins) {
  if (dim < 2 || bins < 1) throw std::invalid_argument("need dim >= 2 and bins >= 1");
  // CDF(F) = 1 - (1-F)^{D-1}
  const double e = static_cast<double>(dim) - 1.0;
  std::vector<double> p(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / bins;
    const double hi = static_cast<double>(b + 1) / bins;
    p[static_cast<std::size_t>(b)] = std::pow(1.0 - lo, e) - std::pow(1.0 - hi, e);
  }
  return p;
}

double kl_divergence_to_haar(std::span<const double> fidelities, std::size_t dim, int bins) {
  if (fidelities.empty()) throw std::invalid_argument("no fidelity samples");
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  for (double f : fidelities) {
    auto b = static_cast<int>(std::floor(f * bins));
    b = std::clamp(b, 0, bins - 1);
    hist[static_cast<std::size_t>(b)] += 1.0;
  }
  const auto haar = haar_fidelity_bin_probabilities(dim, bins);
  const double total = static_cast<double>(fidelities.size());
  double kl = 0.0;
  for (std::size_t b = 0; b < hist.size(); ++b) {
    if (hist[b] == 0.0) continue;
    const double p = hist[b] / total;
    kl += p * std::log(p / std::max(haar[b], kKlFloor));
  }
  return std::max(kl, 0.0);
}

MetricSample expressibility_kl(const AnsatzSpec& spec, int n_pairs, int bins, std::uint64_t seed) {
  if (n_pairs < 100) throw std::invalid_argument("expressibility needs at least 100 pairs");
  if (bins < 10) throw std::invalid_argument("expressibility needs at least 10 bins");
  const Ansatz ansatz(spec);
  Rng rng(seed);
  std::vector<double> fids;
  fids.reserve(static_cast<std::size_t>(n_pairs));
  for (int i = 0; i < n_pairs; ++i) {
    const auto a = ansatz.prepare(random_params(ansatz.param_count(), rng));
    const auto b = ansatz.prepare(random_params(ansatz.param_count(), rng));
    fids.push_back(fidelity(a, b));
  }
  return {kl_divergence_to_haar(fids, std::size_t{1} << spec.n_qubits, bins), n_pairs, seed};
}

}  // namespace equitrot
