#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "equitrot/ansatz.hpp"

namespace equitrot {

struct MetricSample {
  double value = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kDefaultKlBins = 75;
inline constexpr int kDefaultKlPairs = 5000;
inline constexpr double kKlFloor = 1e-12;

/// Q = 2 - (2/n) sum_j Tr(rho_j^2). Throws for n < 2.
double meyer_wallach(const StateVector& state);

/// Mean Q over parameter vectors drawn uniformly from [0, 4pi).
MetricSample entangling_capability(const AnsatzSpec& spec, int n_samples, std::uint64_t seed);

/// Probability mass of the Haar fidelity density (D-1)(1-F)^{D-2} in each
/// of `bins` equal-width bins on [0, 1].
std::vector<double> haar_fidelity_bin_probabilities(std::size_t dim, int bins);

/// KL(histogram(fidelities) || Haar bins), with the Haar mass floored at
/// kKlFloor so empty reference bins stay finite.
double kl_divergence_to_haar(std::span<const double> fidelities, std::size_t dim, int bins);

/// Expressibility: KL between the fidelity distribution of independent
/// random-parameter state pairs and the Haar distribution in dimension 2^n.
MetricSample expressibility_kl(const AnsatzSpec& spec, int n_pairs, int bins, std::uint64_t seed);

}  // namespace equitrot
