#include "entsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entsim/hamiltonian.hpp"

namespace entsim {

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
  return pt;
}

NegativityResult negativity(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose(rho),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::Vector4d ev = es.eigenvalues();
  const double lambda_min = ev.minCoeff();
  const double trace_norm = ev.cwiseAbs().sum();
  const double n_trace = 0.5 * (trace_norm - 1.0);
  const double n_min = std::max(0.0, -lambda_min);
  if (std::abs(n_trace - n_min) > 1e-10)
    throw std::invalid_argument(
        "trace-norm and minimal-eigenvalue negativities disagree; "
        "input is not a two-qubit density matrix");
  return {n_min, lambda_min};
}

double concurrence(const Eigen::Matrix4cd& rho) {
  static const Eigen::Matrix4cd yy = kron2(pauli::y(), pauli::y());
  const Eigen::Matrix4cd m = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
  Eigen::Vector4d lam;
  for (int k = 0; k < 4; ++k)
    lam[k] = std::sqrt(std::max(0.0, es.eigenvalues()[k].real()));
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entanglement_of_formation(double c) {
  if (c < -1e-9 || c > 1.0 + 1e-9)
    throw std::invalid_argument("concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

Eigen::Matrix3d correlation_matrix(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix2cd sig[3] = {pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const cx v = (rho * kron2(sig[i], sig[j])).trace();
      if (std::abs(v.imag()) > 1e-8)
        throw std::invalid_argument(
            "correlation matrix has an imaginary part; input corrupt");
      t(i, j) = v.real();
    }
  return t;
}

double theta(const Eigen::Matrix4cd& rho) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(correlation_matrix(rho));
  return svd.singularValues().sum();
}

namespace {

// Columns are the magic Bell states expressed in the computational basis.
const Eigen::Matrix4cd& magic_basis() {
  static const Eigen::Matrix4cd u = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const cx i(0.0, 1.0);
    Eigen::Matrix4cd m;
    m.col(0) << s, 0, 0, s;            // |F+>
    m.col(1) << i * s, 0, 0, -i * s;   // i|F->
    m.col(2) << 0, i * s, i * s, 0;    // i|P+>
    m.col(3) << 0, s, -s, 0;           // |P->
    return m;
  }();
  return u;
}

}  // namespace

double fully_entangled_fraction(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd& u = magic_basis();
  const Eigen::Matrix4d re = (u.adjoint() * rho * u).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(
      0.5 * (re + re.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double h_of_f(double f) {
  if (f < 0.5) return 0.0;
  f = std::min(f, 1.0);
  return binary_entropy(0.5 + std::sqrt(f * (1.0 - f)));
}

EntanglementReport analyze(const Eigen::Matrix4cd& rho) {
  EntanglementReport rep;
  const NegativityResult neg = negativity(rho);
  rep.negativity = neg.negativity;
  rep.lambda_min_pt = neg.lambda_min;
  rep.concurrence = concurrence(rho);
  rep.eof = entanglement_of_formation(rep.concurrence);
  rep.theta = theta(rho);
  rep.fef = fully_entangled_fraction(rho);
  rep.h_fef = h_of_f(rep.fef);
  rep.distillable = rep.fef > 0.5;
  return rep;
}

}  // namespace entsim
