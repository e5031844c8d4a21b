#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

#include "entsim/qstate.hpp"
#include "entsim/rng.hpp"

namespace entsim {

enum class Model {
  HeisenbergIsotropic,
  HeisenbergStaggered,
  TiltedIsing,
  TwoBodyRandom
};

std::string_view model_name(Model model);
std::optional<Model> model_from_name(std::string_view name);

/// Staggered z-field: 0 on even sites, -1/2 on odd sites.
inline constexpr double kStaggeredOddField = -0.5;

/// Ensemble scale of the random two-body term: entries are Gaussian with
/// ensemble-mean squared Frobenius norm tr(h^2) equal to the matrix
/// dimension (4), the normalized-trace convention.
inline constexpr double kTwoBodyMeanFrobSq = 4.0;

struct HamiltonianSpec {
  Model model = Model::HeisenbergIsotropic;
  int n = 2;
  std::uint64_t seed = 0;  ///< ensemble seed, consumed by TwoBodyRandom only
};

void validate(const HamiltonianSpec& spec);

/// Two-site term acting on qubits (site, site+1) of the chain.
struct BondOperator {
  int site = 0;
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
};

namespace pauli {
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
Eigen::Matrix2cd id();
}  // namespace pauli

/// kron(a, b) for 2x2 blocks; index 2*i+j labels |ij>.
Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

/// sx sx + sy sy + sz sz.
Eigen::Matrix4cd heisenberg_exchange();

/// Random Hermitian 4x4 two-body term: A with i.i.d. complex Gaussian
/// entries (component std 1/2), Hermitized as (A + A^dag)/2. This makes
/// E[tr h^2] = 4 (see kTwoBodyMeanFrobSq) and leaves matrix elements between
/// fixed orthonormal vectors exactly complex Gaussian.
Eigen::Matrix4cd sample_two_body_random(RandomStream& rng);

/// The n-1 bond operators of the open chain. Single-site terms (staggered
/// field, Ising tilt) are absorbed into adjacent bonds: half weight on each
/// interior site, full weight where a boundary site has only one bond. The
/// embedded sum of the returned matrices equals the model Hamiltonian
/// exactly. TwoBodyRandom draws one matrix from `rng` and repeats it on
/// every bond.
std::vector<BondOperator> build_bonds(const HamiltonianSpec& spec,
                                      RandomStream& rng);

/// Same, with the stream derived from spec.seed.
std::vector<BondOperator> build_bonds(const HamiltonianSpec& spec);

/// out = H|in> without materializing H. `out` is resized as needed.
void apply_hamiltonian(const std::vector<BondOperator>& bonds,
                       const PureState& in, PureState& out);
PureState apply_hamiltonian(const std::vector<BondOperator>& bonds,
                            const PureState& in);

/// Dense 2^n x 2^n assembly of the embedded bond sum (n <= 12).
Eigen::MatrixXcd assemble_dense(const std::vector<BondOperator>& bonds,
                                int n);

/// Applies a 4x4 operator to the adjacent qubits (site, site+1) of psi,
/// in place. Shared kernel of apply_hamiltonian and the propagator.
void apply_bond_gate(const Eigen::Matrix4cd& op, cx* psi, int n, int site);

}  // namespace entsim
