#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "entsim/rng.hpp"

namespace entsim {

using cx = std::complex<double>;

/// Largest supported chain length (2^18 amplitudes ~ 4 MB per state).
inline constexpr int kMaxQubits = 18;

/// Normalized state vector of an n-qubit register. Basis convention: qubit 0
/// is the most significant bit of the computational-basis index, so
/// amps[k] multiplies |b_0 b_1 ... b_{n-1}> with b_0 = bit (n-1) of k.
struct PureState {
  int n = 0;
  Eigen::VectorXcd amps;

  std::uint64_t dim() const { return std::uint64_t{1} << n; }
};

/// Single-qubit state cos(phi) e^{i alpha} |0> + sin(phi) e^{i beta} |1>.
struct QubitSample {
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  cx amp0{1.0, 0.0};
  cx amp1{0.0, 0.0};

  /// The orthogonal companion (-sin(phi) e^{-i beta}, cos(phi) e^{-i alpha}).
  QubitSample orthogonal() const;
};

enum class InitialStateKind {
  RandomProduct,        ///< independent Bloch-uniform state on every qubit
  HomogeneousZero,      ///< |0...0>
  EnvRandomPairProduct  ///< Bloch-uniform pair, one global random environment
};

/// Ordered qubit pair; `a` labels the first tensor factor of the reduced
/// density matrix.
struct QubitPair {
  int a = 0;
  int b = 1;
};

/// Centered pair at separation r: a = floor((n-r)/2), b = a + r.
QubitPair middle_pair(int n, int separation);

/// 4x4 reduced density matrix in basis |00>,|01>,|10>,|11>; the first label
/// belongs to pair.a.
struct TwoQubitDensity {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

  /// Throws std::invalid_argument unless Hermitian and unit trace within
  /// `tol` and all eigenvalues >= -psd_tol.
  void validate(double tol = 1e-10, double psd_tol = 1e-9) const;
};

/// Deterministic construction from three uniform draws: alpha = 2 pi xi_a,
/// beta = 2 pi xi_b, phi = arcsin(sqrt(xi_p)). This is the Bloch-sphere
/// uniform (Haar) distribution when the xi are U[0,1).
QubitSample qubit_from_xi(double xi_alpha, double xi_beta, double xi_phi);

/// Draws xi_alpha, xi_beta, xi_phi from `rng` in that order.
QubitSample sample_haar_qubit(RandomStream& rng);

/// Builds the initial state demanded by `kind`. The pair argument is only
/// used by EnvRandomPairProduct (those two sites get their own Bloch-uniform
/// states; the other n-2 share one normalized complex-Gaussian vector).
/// Draw order: pair states (a then b), then environment amplitudes.
PureState build_initial_state(InitialStateKind kind, int n, QubitPair pair,
                              RandomStream& rng);

/// Partial trace over every qubit except pair.a and pair.b.
TwoQubitDensity reduced_density_matrix(const PureState& state, QubitPair pair);

}  // namespace entsim
