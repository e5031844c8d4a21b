#include "entsim/hamiltonian.hpp"

#include <stdexcept>
#include <string>

namespace entsim {

std::string_view model_name(Model model) {
  switch (model) {
    case Model::HeisenbergIsotropic: return "heisenberg";
    case Model::HeisenbergStaggered: return "heisenberg-staggered";
    case Model::TiltedIsing: return "tilted-ising";
    case Model::TwoBodyRandom: return "tbrm";
  }
  return "?";
}

std::optional<Model> model_from_name(std::string_view name) {
  if (name == "heisenberg") return Model::HeisenbergIsotropic;
  if (name == "heisenberg-staggered") return Model::HeisenbergStaggered;
  if (name == "tilted-ising") return Model::TiltedIsing;
  if (name == "tbrm") return Model::TwoBodyRandom;
  return std::nullopt;
}

void validate(const HamiltonianSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("chain needs at least 2 sites");
  if (spec.n > kMaxQubits)
    throw std::invalid_argument("chain length exceeds supported maximum " +
                                std::to_string(kMaxQubits));
}

namespace pauli {
Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << cx(0, 0), cx(0, -1), cx(0, 1), cx(0, 0);
  return m;
}
Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
Eigen::Matrix2cd id() { return Eigen::Matrix2cd::Identity(); }
}  // namespace pauli

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Eigen::Matrix4cd heisenberg_exchange() {
  return kron2(pauli::x(), pauli::x()) + kron2(pauli::y(), pauli::y()) +
         kron2(pauli::z(), pauli::z());
}

Eigen::Matrix4cd sample_two_body_random(RandomStream& rng) {
  Eigen::Matrix4cd a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = 0.5 * rng.complex_normal();
  return 0.5 * (a + a.adjoint());
}

std::vector<BondOperator> build_bonds(const HamiltonianSpec& spec,
                                      RandomStream& rng) {
  validate(spec);
  const int n = spec.n;
  std::vector<BondOperator> bonds(n - 1);

  // Weight of the single-site term of site s inside an adjacent bond.
  const auto site_weight = [n](int s) { return (s == 0 || s == n - 1) ? 1.0 : 0.5; };

  Eigen::Matrix4cd coupling;
  switch (spec.model) {
    case Model::HeisenbergIsotropic:
    case Model::HeisenbergStaggered:
      coupling = heisenberg_exchange();
      break;
    case Model::TiltedIsing:
      coupling = kron2(pauli::x(), pauli::x());
      break;
    case Model::TwoBodyRandom:
      coupling = sample_two_body_random(rng);
      break;
  }

  for (int i = 0; i < n - 1; ++i) {
    bonds[i].site = i;
    Eigen::Matrix4cd m = coupling;
    if (spec.model == Model::HeisenbergStaggered) {
      const double h_left = (i % 2 == 1) ? kStaggeredOddField : 0.0;
      const double h_right = ((i + 1) % 2 == 1) ? kStaggeredOddField : 0.0;
      m += h_left * site_weight(i) * kron2(pauli::z(), pauli::id());
      m += h_right * site_weight(i + 1) * kron2(pauli::id(), pauli::z());
    } else if (spec.model == Model::TiltedIsing) {
      const Eigen::Matrix2cd tilt = pauli::x() + pauli::z();
      m += site_weight(i) * kron2(tilt, pauli::id());
      m += site_weight(i + 1) * kron2(pauli::id(), tilt);
    }
    bonds[i].matrix = m;
  }
  return bonds;
}

std::vector<BondOperator> build_bonds(const HamiltonianSpec& spec) {
  RandomStream rng(spec.seed);
  return build_bonds(spec, rng);
}

void apply_bond_gate(const Eigen::Matrix4cd& op, cx* psi, int n, int site) {
  const int p = n - 2 - site;  // bit position of qubit site+1
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t groups = dim >> 2;
  const std::uint64_t pmask = (std::uint64_t{1} << p) - 1;
  const std::uint64_t step = std::uint64_t{1} << p;
  cx m[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = op(r, c);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t base = ((g & ~pmask) << 2) | (g & pmask);
    cx* a0 = psi + base;
    cx* a1 = a0 + step;
    cx* a2 = a0 + 2 * step;
    cx* a3 = a0 + 3 * step;
    const cx v0 = *a0, v1 = *a1, v2 = *a2, v3 = *a3;
    *a0 = m[0][0] * v0 + m[0][1] * v1 + m[0][2] * v2 + m[0][3] * v3;
    *a1 = m[1][0] * v0 + m[1][1] * v1 + m[1][2] * v2 + m[1][3] * v3;
    *a2 = m[2][0] * v0 + m[2][1] * v1 + m[2][2] * v2 + m[2][3] * v3;
    *a3 = m[3][0] * v0 + m[3][1] * v1 + m[3][2] * v2 + m[3][3] * v3;
  }
}

void apply_hamiltonian(const std::vector<BondOperator>& bonds,
                       const PureState& in, PureState& out) {
  const int n = in.n;
  const std::uint64_t dim = in.dim();
  if (in.amps.size() != static_cast<Eigen::Index>(dim))
    throw std::invalid_argument("state dimension mismatch");
  out.n = n;
  out.amps.setZero(in.amps.size());
  const cx* src = in.amps.data();
  cx* dst = out.amps.data();

  for (const BondOperator& bond : bonds) {
    if (bond.site < 0 || bond.site >= n - 1)
      throw std::invalid_argument("bond site out of range");
    const int p = n - 2 - bond.site;
    const std::uint64_t groups = dim >> 2;
    const std::uint64_t pmask = (std::uint64_t{1} << p) - 1;
    const std::uint64_t step = std::uint64_t{1} << p;
    cx m[4][4];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m[r][c] = bond.matrix(r, c);
    for (std::uint64_t g = 0; g < groups; ++g) {
      const std::uint64_t base = ((g & ~pmask) << 2) | (g & pmask);
      const cx v0 = src[base];
      const cx v1 = src[base + step];
      const cx v2 = src[base + 2 * step];
      const cx v3 = src[base + 3 * step];
      dst[base] += m[0][0] * v0 + m[0][1] * v1 + m[0][2] * v2 + m[0][3] * v3;
      dst[base + step] +=
          m[1][0] * v0 + m[1][1] * v1 + m[1][2] * v2 + m[1][3] * v3;
      dst[base + 2 * step] +=
          m[2][0] * v0 + m[2][1] * v1 + m[2][2] * v2 + m[2][3] * v3;
      dst[base + 3 * step] +=
          m[3][0] * v0 + m[3][1] * v1 + m[3][2] * v2 + m[3][3] * v3;
    }
  }
}

PureState apply_hamiltonian(const std::vector<BondOperator>& bonds,
                            const PureState& in) {
  PureState out;
  apply_hamiltonian(bonds, in, out);
  return out;
}

Eigen::MatrixXcd assemble_dense(const std::vector<BondOperator>& bonds,
                                int n) {
  if (n < 2 || n > 12)
    throw std::invalid_argument("dense assembly supports 2 <= n <= 12");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const BondOperator& bond : bonds) {
    const int p = n - 2 - bond.site;
    const std::uint64_t groups = dim >> 2;
    const std::uint64_t pmask = (std::uint64_t{1} << p) - 1;
    const std::uint64_t step = std::uint64_t{1} << p;
    for (std::uint64_t g = 0; g < groups; ++g) {
      const std::uint64_t base = ((g & ~pmask) << 2) | (g & pmask);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          h(base + std::uint64_t(r) * step, base + std::uint64_t(c) * step) +=
              bond.matrix(r, c);
    }
  }
  return h;
}

}  // namespace entsim
