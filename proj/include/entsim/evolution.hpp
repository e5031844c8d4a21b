#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "entsim/hamiltonian.hpp"
#include "entsim/qstate.hpp"

namespace entsim {

struct PropagationConfig {
  double dt = 0.05;         ///< starting step size before refinement
  int order = 2;            ///< symmetric even/odd splitting order
  double tolerance = 1e-8;  ///< target state error per unit time
  std::uint64_t max_steps = std::uint64_t{1} << 26;  ///< refinement cap
};

class EvolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Second-order symmetric even/odd bond splitting with exact 4x4 bond
/// unitaries. Each advance() is certified by step halving: the segment is
/// re-run at half step until two refinements agree within
/// tolerance * segment length, and the finer result is kept.
class Propagator {
 public:
  Propagator(std::vector<BondOperator> bonds, int n, PropagationConfig config);

  /// Advances psi by `dt_phys` in place and renormalizes.
  void advance(PureState& psi, double dt_phys);

  /// Strang splitting over `segment` with exactly `steps` steps, in place,
  /// no certification.
  void run_steps(cx* psi, double segment, std::uint64_t steps) const;

  /// Step size accepted by the last certification.
  double accepted_step() const { return accepted_step_; }

 private:
  struct BondEigen {
    int site;
    Eigen::Vector4d evals;
    Eigen::Matrix4cd evecs;
  };

  Eigen::Matrix4cd unitary(const BondEigen& be, double dt) const;

  int n_;
  PropagationConfig config_;
  std::vector<BondEigen> even_, odd_;
  double accepted_step_;
};

/// exp(-iHt)|state> within tolerance * max(t, 1), renormalized.
/// Throws EvolutionError if step refinement underflows.
PureState evolve(const PureState& state, const std::vector<BondOperator>& bonds,
                 double t, const PropagationConfig& config = {});

/// Plain Strang splitting with a fixed step count, no certification.
PureState trotter_fixed_steps(const PureState& state,
                              const std::vector<BondOperator>& bonds, double t,
                              std::uint64_t steps);

/// Exact propagation via dense eigendecomposition; n <= 10. Validation
/// reference for evolve(). TwoBodyRandom bonds are drawn from spec.seed.
PureState dense_expm_oracle(const HamiltonianSpec& spec, const PureState& state,
                            double t);

}  // namespace entsim
