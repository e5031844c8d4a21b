#include <cmath>

#include "doctest.h"
#include "entsim/evolution.hpp"
#include "entsim/measures.hpp"
#include "entsim/perturbation.hpp"
#include "oracles.hpp"

using namespace entsim;

namespace {

/// Product state with fixed pair states at the centered pair and a random
/// environment drawn from `rng`.
PureState product_with_pair(int n, QubitPair pair, const QubitSample& qa,
                            const QubitSample& qb, RandomStream& rng) {
  PureState st;
  st.n = n;
  st.amps.resize(std::int64_t{1} << n);
  std::vector<QubitSample> qs(n);
  for (int q = 0; q < n; ++q) qs[q] = sample_haar_qubit(rng);
  qs[pair.a] = qa;
  qs[pair.b] = qb;
  for (std::uint64_t k = 0; k < st.dim(); ++k) {
    cx amp(1.0, 0.0);
    for (int q = 0; q < n; ++q)
      amp *= (k >> (n - 1 - q)) & 1 ? qs[q].amp1 : qs[q].amp0;
    st.amps[k] = amp;
  }
  return st;
}

/// Richardson-extrapolated t->0 slope of f at scale t: [4 f(t/2) - f(t)] / t.
double slope_estimate(double f_half, double f_full, double t) {
  return (4.0 * f_half - f_full) / t;
}

}  // namespace

TEST_SUITE_BEGIN("perturbation");

TEST_CASE("delta vanishes for aligned basis states and scalar bonds") {
  const QubitSample zero = qubit_from_xi(0.0, 0.0, 0.0);
  const cx d = delta_element(heisenberg_exchange(), zero, zero);
  CHECK(std::abs(d) < 1e-14);

  RandomStream rng(8);
  const Eigen::Matrix4cd half_id = 0.5 * Eigen::Matrix4cd::Identity();
  for (int trial = 0; trial < 20; ++trial) {
    const QubitSample a = sample_haar_qubit(rng);
    const QubitSample b = sample_haar_qubit(rng);
    CHECK(std::abs(delta_element(half_id, a, b)) < 1e-14);
  }
}

TEST_CASE("|delta| ignores single-qubit phases") {
  RandomStream rng(16);
  const Eigen::Matrix4cd h = heisenberg_exchange();
  const QubitSample a = sample_haar_qubit(rng);
  const QubitSample b = sample_haar_qubit(rng);
  const double base = std::abs(delta_element(h, a, b));
  for (const double shift : {0.4, 1.9, 5.0}) {
    QubitSample as = a;
    as.alpha += shift;  // global phase: rotate both components together
    as.beta += shift;
    as.amp0 *= std::exp(cx(0, shift));
    as.amp1 *= std::exp(cx(0, shift));
    CHECK(std::abs(delta_element(h, as, b)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("single-site absorbed terms do not change delta") {
  RandomStream rng(23);
  // interior bond of each deterministic model vs the bare coupling
  const auto stag_bonds = build_bonds({Model::HeisenbergStaggered, 8, 0});
  const auto tilt_bonds = build_bonds({Model::TiltedIsing, 8, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const QubitSample a = sample_haar_qubit(rng);
    const QubitSample b = sample_haar_qubit(rng);
    CHECK(std::abs(delta_element(stag_bonds[3].matrix, a, b)) ==
          doctest::Approx(std::abs(delta_element(heisenberg_exchange(), a, b)))
              .epsilon(1e-10));
    CHECK(std::abs(delta_element(tilt_bonds[3].matrix, a, b)) ==
          doctest::Approx(std::abs(delta_element(
                              kron2(pauli::x(), pauli::x()), a, b)))
              .epsilon(1e-10));
  }
}

TEST_CASE("monte carlo growth constants approach the references") {
  RandomStream rng(1001);
  for (const Model model :
       {Model::HeisenbergIsotropic, Model::HeisenbergStaggered,
        Model::TiltedIsing, Model::TwoBodyRandom}) {
    const PerturbationStats st = mean_abs_delta({model, 4, 0}, 30000, rng);
    CHECK(std::abs(st.mean_abs_delta - reference_abs_delta(model)) <
          3.5 * st.std_error);
  }
  CHECK_THROWS_AS(
      mean_abs_delta({Model::TiltedIsing, 4, 0}, 100, rng),
      std::invalid_argument);
}

TEST_CASE("two-body ensemble: fixed pair and averaged pair agree") {
  RandomStream rng(2002);
  const QubitSample a = sample_haar_qubit(rng);
  const QubitSample b = sample_haar_qubit(rng);
  const int samples = 60000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double v =
        std::abs(delta_element(sample_two_body_random(rng), a, b));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double se =
      std::sqrt((sum_sq / samples - mean * mean) / samples);
  RandomStream rng2(2003);
  const PerturbationStats averaged =
      mean_abs_delta({Model::TwoBodyRandom, 4, 0}, samples, rng2);
  const double combined =
      std::sqrt(se * se + averaged.std_error * averaged.std_error);
  CHECK(std::abs(mean - averaged.mean_abs_delta) < 3.5 * combined);
}

TEST_CASE("short time predictions") {
  CHECK(short_time_prediction(ShortTimeMeasure::LambdaMin, 0.5, 0.01) ==
        doctest::Approx(-0.005).epsilon(1e-15));
  CHECK(short_time_prediction(ShortTimeMeasure::Theta, 0.77, 0.0) == 1.0);
  CHECK(short_time_prediction(ShortTimeMeasure::Concurrence, 1.0, 0.01) ==
        doctest::Approx(0.02).epsilon(1e-15));
  CHECK_THROWS_AS(
      short_time_prediction(ShortTimeMeasure::Theta, 1.0, -0.1),
      std::invalid_argument);
}

TEST_CASE("short-time concurrence against the full evolution") {
  // |delta| = 1 instance: chi_a = |0>, chi_b at phi = pi/4 with zero phases
  const QubitSample qa = qubit_from_xi(0.0, 0.0, 0.0);
  const QubitSample qb = qubit_from_xi(0.0, 0.0, 0.5);
  const int n = 10;
  const QubitPair pair = middle_pair(n, 1);
  const HamiltonianSpec spec{Model::HeisenbergIsotropic, n, 0};
  const auto bonds = build_bonds(spec);
  const double inst =
      std::abs(delta_element(bonds[pair.a].matrix, qa, qb));
  CHECK(inst == doctest::Approx(1.0).epsilon(1e-12));

  RandomStream rng(3003);
  const PureState st = product_with_pair(n, pair, qa, qb, rng);
  const double t = 0.01;
  const PureState evolved = evolve(st, bonds, t, {.tolerance = 1e-10});
  const double c = concurrence(reduced_density_matrix(evolved, pair).m);
  CHECK(std::abs(c - short_time_prediction(ShortTimeMeasure::Concurrence,
                                           inst, t)) < 5e-4);
}

TEST_CASE("slopes match the instance delta and ignore the environment") {
  RandomStream rng(4004);
  const int n = 8;
  const QubitPair pair = middle_pair(n, 1);
  const HamiltonianSpec spec{Model::HeisenbergStaggered, n, 0};
  const auto bonds = build_bonds(spec);

  int accepted = 0;
  while (accepted < 10) {
    const QubitSample qa = sample_haar_qubit(rng);
    const QubitSample qb = sample_haar_qubit(rng);
    const double inst =
        std::abs(delta_element(bonds[pair.a].matrix, qa, qb));
    if (inst < 0.3) continue;  // outside the short-time window, see docs
    ++accepted;
    const double t = 0.005 / inst;
    const PureState st = product_with_pair(n, pair, qa, qb, rng);
    const auto c_at = [&](double tt) {
      const PureState e = evolve(st, bonds, tt, {.tolerance = 1e-11});
      return concurrence(reduced_density_matrix(e, pair).m);
    };
    const double slope = slope_estimate(c_at(t / 2), c_at(t), t);
    CHECK(std::abs(slope - 2.0 * inst) < 0.01 * 2.0 * inst);

    // fresh environment, same pair: slope unchanged within 1%
    const PureState st2 = product_with_pair(n, pair, qa, qb, rng);
    const auto c2_at = [&](double tt) {
      const PureState e = evolve(st2, bonds, tt, {.tolerance = 1e-11});
      return concurrence(reduced_density_matrix(e, pair).m);
    };
    const double slope2 = slope_estimate(c2_at(t / 2), c2_at(t), t);
    CHECK(std::abs(slope2 - slope) < 0.01 * slope);
  }
}

TEST_SUITE_END();
