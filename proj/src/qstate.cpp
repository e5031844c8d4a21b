#include "entsim/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entsim {

namespace {

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("qubit count must be at least 2");
  if (n > kMaxQubits)
    throw std::invalid_argument("qubit count exceeds supported maximum " +
                                std::to_string(kMaxQubits));
}

void check_pair(int n, QubitPair pair) {
  if (pair.a == pair.b) throw std::invalid_argument("pair qubits must differ");
  if (pair.a < 0 || pair.b < 0 || pair.a >= n || pair.b >= n)
    throw std::invalid_argument("pair index out of range");
}

}  // namespace

QubitSample QubitSample::orthogonal() const {
  QubitSample o;
  o.phi = phi;
  o.alpha = alpha;
  o.beta = beta;
  o.amp0 = -std::sin(phi) * std::exp(cx(0.0, -beta));
  o.amp1 = std::cos(phi) * std::exp(cx(0.0, -alpha));
  return o;
}

QubitPair middle_pair(int n, int separation) {
  if (separation < 1 || separation >= n)
    throw std::invalid_argument("separation out of range");
  const int a = (n - separation) / 2;
  return {a, a + separation};
}

void TwoQubitDensity::validate(double tol, double psd_tol) const {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m.trace() - cx(1.0, 0.0)) > tol)
    throw std::invalid_argument("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

QubitSample qubit_from_xi(double xi_alpha, double xi_beta, double xi_phi) {
  QubitSample q;
  q.alpha = 2.0 * M_PI * xi_alpha;
  q.beta = 2.0 * M_PI * xi_beta;
  q.phi = std::asin(std::sqrt(xi_phi));
  q.amp0 = std::cos(q.phi) * std::exp(cx(0.0, q.alpha));
  q.amp1 = std::sin(q.phi) * std::exp(cx(0.0, q.beta));
  return q;
}

QubitSample sample_haar_qubit(RandomStream& rng) {
  const double xa = rng.uniform();
  const double xb = rng.uniform();
  const double xp = rng.uniform();
  return qubit_from_xi(xa, xb, xp);
}

PureState build_initial_state(InitialStateKind kind, int n, QubitPair pair,
                              RandomStream& rng) {
  check_n(n);
  check_pair(n, pair);
  if (kind == InitialStateKind::EnvRandomPairProduct && pair.a >= pair.b)
    throw std::invalid_argument("pair must be ordered a < b");

  PureState st;
  st.n = n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  st.amps.setZero(static_cast<Eigen::Index>(dim));

  switch (kind) {
    case InitialStateKind::HomogeneousZero:
      st.amps[0] = 1.0;
      return st;

    case InitialStateKind::RandomProduct: {
      // Iterated Kronecker product, qubit 0 ending up as the MSB.
      st.amps[0] = 1.0;
      std::uint64_t filled = 1;
      for (int q = 0; q < n; ++q) {
        const QubitSample chi = sample_haar_qubit(rng);
        for (std::uint64_t k = filled; k-- > 0;) {
          const cx v = st.amps[static_cast<Eigen::Index>(k)];
          st.amps[static_cast<Eigen::Index>(2 * k)] = v * chi.amp0;
          st.amps[static_cast<Eigen::Index>(2 * k + 1)] = v * chi.amp1;
        }
        filled <<= 1;
      }
      return st;
    }

    case InitialStateKind::EnvRandomPairProduct: {
      const QubitSample chi_a = sample_haar_qubit(rng);
      const QubitSample chi_b = sample_haar_qubit(rng);
      const std::uint64_t env_dim = dim >> 2;
      Eigen::VectorXcd env(static_cast<Eigen::Index>(env_dim));
      for (std::uint64_t k = 0; k < env_dim; ++k)
        env[static_cast<Eigen::Index>(k)] = rng.complex_normal();
      env.normalize();

      const int pa = n - 1 - pair.a;  // bit positions
      const int pb = n - 1 - pair.b;
      const int p_low = std::min(pa, pb);
      const int p_high = std::max(pa, pb);
      const std::uint64_t low_mask = (std::uint64_t{1} << p_low) - 1;
      const std::uint64_t mid_mask =
          (std::uint64_t{1} << (p_high - 1 - p_low)) - 1;
      const cx pair_amp[2][2] = {
          {chi_a.amp0 * chi_b.amp0, chi_a.amp0 * chi_b.amp1},
          {chi_a.amp1 * chi_b.amp0, chi_a.amp1 * chi_b.amp1}};
      for (std::uint64_t e = 0; e < env_dim; ++e) {
        // Spread the environment bits around the two pair positions. The
        // environment index orders the non-pair qubits by chain position.
        const std::uint64_t low = e & low_mask;
        const std::uint64_t mid = (e >> p_low) & mid_mask;
        const std::uint64_t high = e >> (p_high - 1);
        const std::uint64_t base = (high << (p_high + 1)) |
                                   (mid << (p_low + 1)) | low;
        const cx ev = env[static_cast<Eigen::Index>(e)];
        for (int ba = 0; ba < 2; ++ba)
          for (int bb = 0; bb < 2; ++bb) {
            const std::uint64_t idx = base |
                                      (std::uint64_t(ba) << pa) |
                                      (std::uint64_t(bb) << pb);
            st.amps[static_cast<Eigen::Index>(idx)] = pair_amp[ba][bb] * ev;
          }
      }
      return st;
    }
  }
  throw std::invalid_argument("unknown initial state kind");
}

TwoQubitDensity reduced_density_matrix(const PureState& state,
                                       QubitPair pair) {
  check_n(state.n);
  check_pair(state.n, pair);
  const int n = state.n;
  const int pa = n - 1 - pair.a;
  const int pb = n - 1 - pair.b;
  const int p_low = std::min(pa, pb);
  const int p_high = std::max(pa, pb);
  const std::uint64_t env_dim = state.dim() >> 2;
  const std::uint64_t low_mask = (std::uint64_t{1} << p_low) - 1;
  const std::uint64_t mid_mask =
      (std::uint64_t{1} << (p_high - 1 - p_low)) - 1;

  TwoQubitDensity rho;
  const cx* psi = state.amps.data();
  for (std::uint64_t e = 0; e < env_dim; ++e) {
    const std::uint64_t low = e & low_mask;
    const std::uint64_t mid = (e >> p_low) & mid_mask;
    const std::uint64_t high = e >> (p_high - 1);
    const std::uint64_t base =
        (high << (p_high + 1)) | (mid << (p_low + 1)) | low;
    cx v[4];
    for (int ba = 0; ba < 2; ++ba)
      for (int bb = 0; bb < 2; ++bb)
        v[2 * ba + bb] =
            psi[base | (std::uint64_t(ba) << pa) | (std::uint64_t(bb) << pb)];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) rho.m(r, c) += v[r] * std::conj(v[c]);
  }
  return rho;
}

}  // namespace entsim
