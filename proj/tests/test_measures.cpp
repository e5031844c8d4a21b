#include <cmath>

#include "doctest.h"
#include "entsim/measures.hpp"
#include "oracles.hpp"

using namespace entsim;

TEST_SUITE_BEGIN("measures");

TEST_CASE("bell state values") {
  const Eigen::Matrix4cd bell = oracles::bell_phi_plus();
  const EntanglementReport rep = analyze(bell);
  CHECK(rep.negativity == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.lambda_min_pt == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rep.concurrence == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.eof == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.theta == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.fef == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.distillable);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose(bell),
                                                     Eigen::EigenvaluesOnly);
  Eigen::Vector4d expect;
  expect << -0.5, 0.5, 0.5, 0.5;
  CHECK((es.eigenvalues() - expect).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::Matrix3d t = correlation_matrix(bell);
  Eigen::Matrix3d texpect = Eigen::Matrix3d::Zero();
  texpect(0, 0) = 1;
  texpect(1, 1) = -1;
  texpect(2, 2) = 1;
  CHECK((t - texpect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial transpose is an involution and preserves products") {
  RandomStream rng(5150);
  const Eigen::Matrix4cd rho = oracles::random_density(rng);
  CHECK((partial_transpose(partial_transpose(rho)) - rho).cwiseAbs().maxCoeff() ==
        0.0);
  const Eigen::Matrix4cd pt = partial_transpose(rho);
  CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(pt.trace() - cx(1, 0)) < 1e-14);

  // product state: rho_A x rho_B maps to rho_A x rho_B^T, still PSD
  Eigen::Matrix2cd a, b;
  a << 0.7, cx(0.1, 0.2), cx(0.1, -0.2), 0.3;
  b << 0.4, cx(0.0, -0.3), cx(0.0, 0.3), 0.6;
  Eigen::Matrix4cd prod;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  const Eigen::Matrix4cd expect = [&] {
    Eigen::Matrix4cd m;
    const Eigen::Matrix2cd bt = b.transpose();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * bt;
    return m;
  }();
  CHECK((partial_transpose(prod) - expect).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose(prod),
                                                     Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  const NegativityResult nr = negativity(prod);
  CHECK(nr.negativity == 0.0);
  CHECK(nr.lambda_min > -1e-12);
}

TEST_CASE("werner state at p = 1/2") {
  const Eigen::Matrix4cd rho = oracles::werner(0.5);
  const EntanglementReport rep = analyze(rho);
  CHECK(rep.lambda_min_pt == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(rep.negativity == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(rep.concurrence == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.theta == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(rep.fef == doctest::Approx(0.625).epsilon(1e-10));
  CHECK(rep.fef == doctest::Approx((1.0 + rep.theta) / 4.0).epsilon(1e-9));
  CHECK(rep.distillable);
}

TEST_CASE("maximally mixed and ghz marginals") {
  const Eigen::Matrix4cd mixed = 0.25 * Eigen::Matrix4cd::Identity();
  CHECK(correlation_matrix(mixed).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(theta(mixed) < 1e-12);
  CHECK(fully_entangled_fraction(mixed) == doctest::Approx(0.25).epsilon(1e-12));

  Eigen::Matrix4cd ghz = Eigen::Matrix4cd::Zero();
  ghz(0, 0) = ghz(3, 3) = 0.5;
  CHECK(theta(ghz) == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::Matrix3d t = correlation_matrix(ghz);
  CHECK(t(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(t(0, 0)) + std::abs(t(1, 1)) < 1e-12);
  CHECK(concurrence(ghz) < 1e-10);
  CHECK(negativity(ghz).negativity == 0.0);
}

TEST_CASE("entanglement of formation formula") {
  CHECK(entanglement_of_formation(0.0) == 0.0);
  CHECK(entanglement_of_formation(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_of_formation(0.6) ==
        doctest::Approx(0.46899559).epsilon(1e-8));
  double prev = -1.0;
  for (int k = 0; k <= 50; ++k) {
    const double c = k / 50.0;
    const double e = entanglement_of_formation(c);
    CHECK(e >= prev);
    prev = e;
  }
  CHECK_THROWS_AS(entanglement_of_formation(1.2), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_of_formation(-0.1), std::invalid_argument);
}

TEST_CASE("pure product state has a rank-one correlation matrix") {
  RandomStream rng(606);
  const QubitSample qa = sample_haar_qubit(rng);
  const QubitSample qb = sample_haar_qubit(rng);
  Eigen::Vector4cd v;
  v << qa.amp0 * qb.amp0, qa.amp0 * qb.amp1, qa.amp1 * qb.amp0,
      qa.amp1 * qb.amp1;
  const Eigen::Matrix4cd rho = v * v.adjoint();
  const Eigen::Matrix3d t = correlation_matrix(rho);

  const auto bloch = [](const QubitSample& q) {
    Eigen::Vector3d a;
    Eigen::Vector2cd s(q.amp0, q.amp1);
    a[0] = (s.adjoint() * oracles::sx() * s)(0).real();
    a[1] = (s.adjoint() * oracles::sy() * s)(0).real();
    a[2] = (s.adjoint() * oracles::sz() * s)(0).real();
    return a;
  };
  const Eigen::Matrix3d expect = bloch(qa) * bloch(qb).transpose();
  CHECK((t - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(theta(rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pure states: concurrence closed form and entropy identity") {
  RandomStream rng(787);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::Vector4cd v;
    const Eigen::Matrix4cd rho = oracles::random_pure_density(rng, &v);
    CHECK(concurrence(rho) ==
          doctest::Approx(oracles::pure_concurrence(v)).epsilon(1e-10));
  }
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector4cd v;
    const Eigen::Matrix4cd rho = oracles::random_pure_density(rng, &v);
    const double ef = entanglement_of_formation(concurrence(rho));
    CHECK(std::abs(ef - oracles::marginal_entropy(v)) < 1e-9);
  }
}

TEST_CASE("measure consistency on random mixed states") {
  RandomStream rng(91);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Matrix4cd rho = oracles::random_density(rng);
    const EntanglementReport rep = analyze(rho);
    // negativity against the signed minimal eigenvalue
    CHECK(rep.negativity ==
          doctest::Approx(std::max(0.0, -rep.lambda_min_pt)).epsilon(1e-10));
    // PPT is necessary and sufficient: zero sets coincide
    CHECK((rep.concurrence < 1e-9) == (rep.negativity < 1e-9));
    // eof exceeds the fully-entangled-fraction bound
    CHECK(rep.eof >= rep.h_fef - 1e-9);
    if (rep.fef >= 0.5) {
      CHECK(rep.fef == doctest::Approx((1.0 + rep.theta) / 4.0).epsilon(1e-9));
      // distillable iff theta > 1, outside a rounding band at the threshold
      if (std::abs(rep.theta - 1.0) > 1e-9)
        CHECK(rep.distillable == (rep.theta > 1.0));
    }
  }
}

TEST_CASE("local unitary invariance") {
  RandomStream rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix4cd rho = oracles::random_density(rng);
    const EntanglementReport base = analyze(rho);
    const Eigen::Matrix2cd ua = oracles::haar_unitary(rng);
    const Eigen::Matrix2cd ub = oracles::haar_unitary(rng);
    Eigen::Matrix4cd u;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
    const EntanglementReport rot = analyze(u * rho * u.adjoint());
    CHECK(std::abs(rot.negativity - base.negativity) < 1e-9);
    CHECK(std::abs(rot.lambda_min_pt - base.lambda_min_pt) < 1e-9);
    CHECK(std::abs(rot.concurrence - base.concurrence) < 1e-9);
    CHECK(std::abs(rot.eof - base.eof) < 1e-9);
    CHECK(std::abs(rot.theta - base.theta) < 1e-9);
    CHECK(std::abs(rot.fef - base.fef) < 1e-9);
  }
}

TEST_CASE("corrupt input is flagged") {
  Eigen::Matrix4cd junk = Eigen::Matrix4cd::Zero();
  junk(0, 1) = cx(0.3, 0.4);  // not Hermitian
  junk(0, 0) = 1.0;
  CHECK_THROWS_AS(correlation_matrix(junk), std::invalid_argument);
}

TEST_SUITE_END();
