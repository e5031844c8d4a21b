#include <cmath>

#include "doctest.h"
#include "entsim/evolution.hpp"
#include "entsim/measures.hpp"
#include "oracles.hpp"

using namespace entsim;

namespace {

PureState random_state(int n, RandomStream& rng) {
  PureState st;
  st.n = n;
  st.amps.setZero(std::int64_t{1} << n);
  for (Eigen::Index k = 0; k < st.amps.size(); ++k)
    st.amps[k] = rng.complex_normal();
  st.amps.normalize();
  return st;
}

}  // namespace

TEST_SUITE_BEGIN("evolution");

TEST_CASE("zero time is the identity") {
  RandomStream rng(3);
  const PureState st = random_state(4, rng);
  const auto bonds = build_bonds({Model::HeisenbergIsotropic, 4, 0});
  const PureState out = evolve(st, bonds, 0.0);
  CHECK((out.amps - st.amps).norm() == 0.0);
}

TEST_CASE("two-site heisenberg rotates |01> analytically") {
  const auto bonds = build_bonds({Model::HeisenbergIsotropic, 2, 0});
  PureState st;
  st.n = 2;
  st.amps.setZero(4);
  st.amps[1] = 1.0;  // |01>

  for (const double t : {0.13, M_PI / 8, 0.7}) {
    const PureState out = evolve(st, bonds, t, {.tolerance = 1e-12});
    const cx phase = std::exp(cx(0, t));
    Eigen::Vector4cd expect;
    expect << 0.0, phase * std::cos(2 * t), phase * cx(0, -1) * std::sin(2 * t),
        0.0;
    CHECK((out.amps - expect).norm() < 1e-10);

    const TwoQubitDensity rho = reduced_density_matrix(out, {0, 1});
    CHECK(concurrence(rho.m) ==
          doctest::Approx(std::abs(std::sin(4 * t))).epsilon(1e-8));
  }
  const PureState quarter = evolve(st, bonds, M_PI / 8, {.tolerance = 1e-12});
  CHECK(concurrence(reduced_density_matrix(quarter, {0, 1}).m) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("oracle preserves norm and eigenphases") {
  RandomStream rng(17);
  const HamiltonianSpec spec{Model::HeisenbergStaggered, 4, 0};
  const PureState st = random_state(4, rng);
  const PureState out = dense_expm_oracle(spec, st, 2.5);
  CHECK(out.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const Eigen::MatrixXcd h = assemble_dense(build_bonds(spec), 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  PureState vec;
  vec.n = 4;
  vec.amps = es.eigenvectors().col(3);
  const double energy = es.eigenvalues()[3];
  const PureState rotated = dense_expm_oracle(spec, vec, 1.7);
  const Eigen::VectorXcd expect =
      std::exp(cx(0, -energy * 1.7)) * vec.amps;
  CHECK((rotated.amps - expect).norm() < 1e-10);

  CHECK_THROWS_AS(
      dense_expm_oracle({Model::HeisenbergIsotropic, 11, 0},
                        random_state(11, rng), 0.1),
      std::invalid_argument);
}

TEST_CASE("evolve matches the dense oracle on all models") {
  RandomStream rng(23);
  const int n = 8;
  for (const Model model :
       {Model::HeisenbergIsotropic, Model::HeisenbergStaggered,
        Model::TiltedIsing, Model::TwoBodyRandom}) {
    const HamiltonianSpec spec{model, n, 4242};
    const PureState st = random_state(n, rng);
    const PureState fast = evolve(st, build_bonds(spec), 1.0, {});
    const PureState exact = dense_expm_oracle(spec, st, 1.0);
    CHECK((fast.amps - exact.amps).norm() < 1e-8);
  }
}

TEST_CASE("composition over segments stays within budget") {
  RandomStream rng(29);
  const int n = 6;
  const auto bonds = build_bonds({Model::TiltedIsing, n, 0});
  const PureState st = random_state(n, rng);
  const PropagationConfig cfg{.tolerance = 1e-9};
  const PureState two_leg = evolve(evolve(st, bonds, 0.8, cfg), bonds, 1.2, cfg);
  const PureState direct = evolve(st, bonds, 2.0, cfg);
  CHECK((two_leg.amps - direct.amps).norm() < 2e-9 * 2.0);
}

TEST_CASE("norm and energy are conserved along a schedule") {
  RandomStream rng(31);
  const int n = 8;
  const HamiltonianSpec spec{Model::HeisenbergStaggered, n, 0};
  const auto bonds = build_bonds(spec);
  PureState st = random_state(n, rng);
  Propagator prop(bonds, n, {.tolerance = 1e-8});
  const double e0 =
      st.amps.dot(apply_hamiltonian(bonds, st).amps).real();
  for (int leg = 0; leg < 10; ++leg) {
    prop.advance(st, 1.0);
    CHECK(std::abs(st.amps.norm() - 1.0) < 1e-10);
    const double e = st.amps.dot(apply_hamiltonian(bonds, st).amps).real();
    CHECK(std::abs(e - e0) < 1e-6);
  }
}

TEST_CASE("splitting converges at second order") {
  RandomStream rng(37);
  const int n = 6;
  const HamiltonianSpec spec{Model::HeisenbergIsotropic, n, 0};
  const auto bonds = build_bonds(spec);
  const PureState st = random_state(n, rng);
  const double t = 1.0;
  const PureState exact = dense_expm_oracle(spec, st, t);

  const double err16 =
      (trotter_fixed_steps(st, bonds, t, 16).amps - exact.amps).norm();
  const double err32 =
      (trotter_fixed_steps(st, bonds, t, 32).amps - exact.amps).norm();
  const double err64 =
      (trotter_fixed_steps(st, bonds, t, 64).amps - exact.amps).norm();
  CHECK(err16 / err32 == doctest::Approx(4.0).epsilon(0.2));
  CHECK(err32 / err64 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("step refinement underflow is reported") {
  RandomStream rng(41);
  const PureState st = random_state(4, rng);
  const auto bonds = build_bonds({Model::TiltedIsing, 4, 0});
  PropagationConfig cfg;
  cfg.tolerance = 1e-16;
  cfg.max_steps = 8;
  CHECK_THROWS_AS(evolve(st, bonds, 1.0, cfg), EvolutionError);
}

TEST_CASE("negative time is rejected") {
  RandomStream rng(43);
  const PureState st = random_state(3, rng);
  CHECK_THROWS_AS(
      evolve(st, build_bonds({Model::TiltedIsing, 3, 0}), -1.0, {}),
      std::invalid_argument);
}

TEST_SUITE_END();
