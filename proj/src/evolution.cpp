#include "entsim/evolution.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace entsim {

Propagator::Propagator(std::vector<BondOperator> bonds, int n,
                       PropagationConfig config)
    : n_(n), config_(config), accepted_step_(config.dt) {
  if (config_.dt <= 0 || config_.tolerance <= 0)
    throw std::invalid_argument("propagation config must be positive");
  if (config_.order != 2)
    throw std::invalid_argument("only the order-2 splitting is implemented");
  for (const BondOperator& b : bonds) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(b.matrix);
    BondEigen be{b.site, es.eigenvalues(), es.eigenvectors()};
    (b.site % 2 == 0 ? even_ : odd_).push_back(be);
  }
}

Eigen::Matrix4cd Propagator::unitary(const BondEigen& be, double dt) const {
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k)
    phases[k] = std::exp(cx(0.0, -be.evals[k] * dt));
  return be.evecs * phases.asDiagonal() * be.evecs.adjoint();
}

void Propagator::run_steps(cx* psi, double segment,
                           std::uint64_t steps) const {
  const double h = segment / static_cast<double>(steps);
  std::vector<std::pair<int, Eigen::Matrix4cd>> even_half, even_full, odd_full;
  even_half.reserve(even_.size());
  even_full.reserve(even_.size());
  odd_full.reserve(odd_.size());
  for (const BondEigen& be : even_) {
    even_half.emplace_back(be.site, unitary(be, 0.5 * h));
    even_full.emplace_back(be.site, unitary(be, h));
  }
  for (const BondEigen& be : odd_) odd_full.emplace_back(be.site, unitary(be, h));

  // Strang splitting with fused interior half steps:
  // E(h/2) [O(h) E(h)]^{m-1} O(h) E(h/2).
  for (const auto& [site, u] : even_half) apply_bond_gate(u, psi, n_, site);
  for (std::uint64_t s = 0; s + 1 < steps; ++s) {
    for (const auto& [site, u] : odd_full) apply_bond_gate(u, psi, n_, site);
    for (const auto& [site, u] : even_full) apply_bond_gate(u, psi, n_, site);
  }
  for (const auto& [site, u] : odd_full) apply_bond_gate(u, psi, n_, site);
  for (const auto& [site, u] : even_half) apply_bond_gate(u, psi, n_, site);
}

void Propagator::advance(PureState& psi, double dt_phys) {
  if (dt_phys < 0) throw std::invalid_argument("negative time step");
  if (dt_phys == 0) return;
  const double budget = config_.tolerance * dt_phys;

  std::uint64_t steps = static_cast<std::uint64_t>(
      std::ceil(dt_phys / std::min(accepted_step_, config_.dt)));
  if (steps < 1) steps = 1;

  Eigen::VectorXcd coarse = psi.amps;
  run_steps(coarse.data(), dt_phys, steps);
  for (bool refined = false;; refined = true) {
    if (steps > config_.max_steps)
      throw EvolutionError("step refinement underflow at dt = " +
                           std::to_string(dt_phys / double(steps)));
    Eigen::VectorXcd fine = psi.amps;
    run_steps(fine.data(), dt_phys, 2 * steps);
    const double diff = (coarse - fine).norm();
    if (diff <= budget) {
      psi.amps = std::move(fine);
      psi.amps.normalize();
      // Allow the next segment to try a coarser step when this one passed
      // on the first attempt.
      const double passed = dt_phys / static_cast<double>(steps);
      accepted_step_ = std::min(refined ? passed : 1.5 * passed, config_.dt);
      return;
    }
    coarse = std::move(fine);
    steps *= 2;
  }
}

PureState evolve(const PureState& state, const std::vector<BondOperator>& bonds,
                 double t, const PropagationConfig& config) {
  if (t < 0) throw std::invalid_argument("evolution time must be >= 0");
  PureState out = state;
  if (t == 0) return out;
  // Contract budget is tolerance * max(t, 1); widen the per-segment
  // tolerance accordingly when t < 1.
  PropagationConfig cfg = config;
  if (t < 1.0) cfg.tolerance = config.tolerance / t;
  Propagator prop(bonds, state.n, cfg);
  prop.advance(out, t);
  return out;
}

PureState trotter_fixed_steps(const PureState& state,
                              const std::vector<BondOperator>& bonds, double t,
                              std::uint64_t steps) {
  if (t < 0 || steps == 0) throw std::invalid_argument("bad fixed-step request");
  Propagator prop(bonds, state.n, {});
  PureState out = state;
  prop.run_steps(out.amps.data(), t, steps);
  return out;
}

PureState dense_expm_oracle(const HamiltonianSpec& spec, const PureState& state,
                            double t) {
  if (spec.n > 10)
    throw std::invalid_argument("dense propagation oracle is limited to n <= 10");
  if (state.n != spec.n) throw std::invalid_argument("state dimension mismatch");
  const Eigen::MatrixXcd h = assemble_dense(build_bonds(spec), spec.n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * state.amps;
  Eigen::VectorXcd phased(coeff.size());
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    phased[k] = coeff[k] * std::exp(cx(0.0, -es.eigenvalues()[k] * t));
  PureState out;
  out.n = spec.n;
  out.amps = es.eigenvectors() * phased;
  return out;
}

}  // namespace entsim
