#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "entsim/hamiltonian.hpp"
#include "entsim/qstate.hpp"

namespace entsim {

struct PerturbationStats {
  Model model = Model::HeisenbergIsotropic;
  double mean_abs_delta = 0.0;
  double std_error = 0.0;
  std::int64_t sample_count = 0;
};

enum class ShortTimeMeasure { LambdaMin, Concurrence, Theta };

/// delta = <chi_a^perp chi_b^perp | h2 | chi_a chi_b>, the two-site matrix
/// element that sets the first-order entanglement growth rate. Only its
/// modulus is meaningful downstream.
cx delta_element(const Eigen::Matrix4cd& h2, const QubitSample& chi_a,
                 const QubitSample& chi_b);

/// Two-site matrix whose element average defines the model's growth-rate
/// constant. Identical to the bare bond coupling except for the staggered
/// chain, where the alternating field folds into the zz weight as
/// 1 + kStaggeredOddField. Not defined for TwoBodyRandom (ensemble-averaged
/// instead).
Eigen::Matrix4cd perturbation_kernel(Model model);

/// The documented growth-rate constants used to rescale time, tau = t * const:
/// 1.0 (isotropic), 0.8882 (staggered), 0.6168 (tilted Ising),
/// sqrt(pi)/4 (two-body random).
double reference_abs_delta(Model model);

/// Monte Carlo mean of |delta| over Bloch-uniform pairs; the TwoBodyRandom
/// case also redraws the bond matrix every sample. Requires samples >= 1000.
PerturbationStats mean_abs_delta(const HamiltonianSpec& spec,
                                 std::int64_t samples, RandomStream& rng);

/// First-order short-time values: lambda_min = -|delta| t, C = 2 |delta| t,
/// Theta = 1 + 4 |delta| t. Valid only while t |delta| << 1.
double short_time_prediction(ShortTimeMeasure measure, double abs_delta,
                             double t);

}  // namespace entsim
