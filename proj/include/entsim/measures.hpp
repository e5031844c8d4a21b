#pragma once

#include <Eigen/Dense>

#include "entsim/qstate.hpp"

namespace entsim {

/// All two-qubit entanglement figures of one density matrix.
struct EntanglementReport {
  double negativity = 0.0;     ///< max(0, -lambda_min_pt)
  double lambda_min_pt = 0.0;  ///< minimal eigenvalue of the partial transpose
  double concurrence = 0.0;
  double eof = 0.0;            ///< entanglement of formation
  double theta = 0.0;          ///< trace norm of the Pauli correlation matrix
  double fef = 0.0;            ///< fully entangled fraction
  double h_fef = 0.0;          ///< lower bound h(f) on the eof
  bool distillable = false;    ///< fef > 1/2
};

struct NegativityResult {
  double negativity = 0.0;
  double lambda_min = 0.0;
};

/// Transpose over the second qubit (fixed convention). Involution; preserves
/// Hermiticity and trace.
Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho);

/// Negativity from the trace-norm formula, cross-checked against
/// max(0, -lambda_min); throws if the two routes disagree beyond 1e-10.
NegativityResult negativity(const Eigen::Matrix4cd& rho);

/// Wootters concurrence: eigenvalues of rho (sy x sy) rho* (sy x sy) are
/// clipped at 0 before the square roots.
double concurrence(const Eigen::Matrix4cd& rho);

/// Binary entropy H(x) in bits, with H(0) = H(1) = 0.
double binary_entropy(double x);

/// E_F = H((1 + sqrt(1 - C^2))/2); rejects C outside [0,1] beyond 1e-9.
double entanglement_of_formation(double c);

/// T_ij = tr(rho sigma_i x sigma_j). Imaginary parts above 1e-8 are
/// reported as input corruption.
Eigen::Matrix3d correlation_matrix(const Eigen::Matrix4cd& rho);

/// Sum of the singular values of the correlation matrix.
double theta(const Eigen::Matrix4cd& rho);

/// Largest eigenvalue of Re(rho) in the magic Bell basis
/// {|F+>, i|F->, i|P+>, |P->}.
double fully_entangled_fraction(const Eigen::Matrix4cd& rho);

/// h(f) = H(1/2 + sqrt(f(1-f))) for f >= 1/2, else 0.
double h_of_f(double f);

EntanglementReport analyze(const Eigen::Matrix4cd& rho);
inline EntanglementReport analyze(const TwoQubitDensity& rho) {
  return analyze(rho.m);
}

}  // namespace entsim
