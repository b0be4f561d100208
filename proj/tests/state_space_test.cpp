#include <doctest.h>

#include "oracles.hpp"
#include "phaselab/errors.hpp"
#include "phaselab/random.hpp"
#include "phaselab/state.hpp"

using namespace phaselab;
using namespace phaselab::test;

TEST_CASE("principal branch convention") {
  CHECK(principal_arg(Complex(-1.0, 0.0)) == doctest::Approx(kPi));
  CHECK(principal_arg(Complex(-1.0, -0.0)) == doctest::Approx(kPi));
  CHECK(principal_arg(Complex(0.0, -1.0)) == doctest::Approx(-kPi / 2));
  CHECK(principal_angle(-kPi) == doctest::Approx(kPi));
  CHECK(principal_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(angle_residual(kTwoPi) == doctest::Approx(0.0));
  CHECK(angle_residual(-0.25) == doctest::Approx(0.25));
}

TEST_CASE("inner product basics") {
  CHECK(inner(ket0(), ket0()) == Complex(1.0, 0.0));
  CHECK(inner(ket0(), ket1()) == Complex(0.0, 0.0));
  // <+|+i> = (1 + i)/2 by direct arithmetic on the 2-vectors.
  Complex g = inner(ket_plus(), ket_plus_i());
  CHECK(g.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.imag() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(inner(ket0(), StateVector::basis(3, 0)), DimensionMismatch);
}

TEST_CASE("inner product sesquilinearity") {
  auto eng = rng::instance_engine(17, 0);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 2 + rep % 5;
    StateVector u = rng::haar_state(eng, dim);
    StateVector v = rng::haar_state(eng, dim);
    RayPhase c = RayPhase::from_angle(rng::uniform(eng, -kPi, kPi));
    // Linear in the second slot, conjugate-linear in the first.
    CHECK(std::abs(inner(u, v.with_phase(c)) - c.value() * inner(u, v)) < 1e-14);
    CHECK(std::abs(inner(u.with_phase(c), v) - std::conj(c.value()) * inner(u, v)) <
          1e-14);
    CHECK(std::abs(inner(u, u) - Complex(1.0)) < 1e-14);
  }
}

TEST_CASE("state constructors enforce normalization") {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{v}, InvalidArgument);
  CHECK_NOTHROW(StateVector::normalized(v));
  // Drift below 1e-9 is absorbed.
  Eigen::VectorXcd nearly(1);
  nearly << Complex(1.0 + 1e-10, 0.0);
  StateVector s{nearly};
  CHECK(std::abs(s.vec().norm() - 1.0) < 1e-15);
  Eigen::VectorXcd nan_vec(1);
  nan_vec << Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(StateVector{nan_vec}, InvalidArgument);
  CHECK_THROWS_AS(StateVector::normalized(Eigen::VectorXcd::Zero(3)), InvalidArgument);
}

TEST_CASE("ray phase validates unit modulus") {
  CHECK_THROWS_AS(RayPhase(Complex(0.5, 0.0)), InvalidArgument);
  CHECK(RayPhase(Complex(0.0, 1.0)).arg() == doctest::Approx(kPi / 2));
  CHECK(RayPhase::from_angle(kPi / 3).arg() == doctest::Approx(kPi / 3));
}

TEST_CASE("ray operator on basis states") {
  // c = 1 is the identity.
  SquareMatrix r1 = ray_operator(ket0(), RayPhase(Complex(1.0, 0.0)));
  CHECK(r1.distance(SquareMatrix::identity(2)) < 1e-15);
  // psi = |0>, c = i gives diag(i, 1).
  SquareMatrix ri = ray_operator(ket0(), RayPhase(Complex(0.0, 1.0)));
  CHECK(std::abs(ri.entry(0, 0) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(ri.entry(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(ri.entry(0, 1)) < 1e-15);
  CHECK(std::abs(ri.entry(1, 0)) < 1e-15);
  // The orthogonal complement is untouched.
  SquareMatrix r = ray_operator(ket0(), RayPhase::from_angle(kPi / 3));
  Eigen::VectorXcd fixed = r.mat() * ket1().vec();
  CHECK((fixed - ket1().vec()).norm() < 1e-15);
}

TEST_CASE("ray operator is unitary and fixes the complement") {
  auto eng = rng::instance_engine(23, 0);
  for (int rep = 0; rep < 500; ++rep) {
    int dim = 2 + rep % 15;
    StateVector psi = rng::haar_state(eng, dim);
    RayPhase c = RayPhase::from_angle(rng::uniform(eng, -kPi, kPi));
    SquareMatrix r = ray_operator(psi, c);
    REQUIRE(r.is_unitary(1e-10));
    // R psi = c psi.
    REQUIRE((r.mat() * psi.vec() - c.value() * psi.vec()).norm() < 1e-12);
    // Project a random state onto the complement; R must fix it.
    Eigen::VectorXcd probe = rng::haar_state(eng, dim).vec();
    probe -= psi.vec().dot(probe) * psi.vec();
    if (probe.norm() > 1e-6) {
      probe.normalize();
      REQUIRE((r.mat() * probe - probe).norm() < 1e-10);
    }
  }
}

TEST_CASE("same_ray detects pure global phases") {
  StateVector rotated = ket0().with_phase(RayPhase::from_angle(kPi / 3));
  auto c = same_ray(ket0(), rotated);
  REQUIRE(c.has_value());
  CHECK(c->arg() == doctest::Approx(kPi / 3).epsilon(1e-12));
  CHECK_FALSE(same_ray(ket0(), ket1()).has_value());
  // |<+|+i>| = 1/sqrt(2) < 1: different rays.
  CHECK_FALSE(same_ray(ket_plus(), ket_plus_i()).has_value());
}

TEST_CASE("same_ray on random states") {
  auto eng = rng::instance_engine(31, 0);
  for (int rep = 0; rep < 300; ++rep) {
    int dim = 2 + rep % 7;
    StateVector psi = rng::haar_state(eng, dim);
    double alpha = rng::uniform(eng, -kPi, kPi);
    auto c = same_ray(psi, psi.with_phase(RayPhase::from_angle(alpha)));
    REQUIRE(c.has_value());
    REQUIRE(angle_residual(c->arg() - alpha) < 1e-10);

    StateVector other = rng::haar_state(eng, dim);
    if (std::abs(inner(psi, other)) < 1.0 - 1e-6) {
      REQUIRE_FALSE(same_ray(psi, other).has_value());
    }
  }
}

TEST_CASE("projector basics") {
  SquareMatrix p0 = projector(ket0());
  CHECK(std::abs(p0.entry(0, 0) - Complex(1)) < 1e-15);
  CHECK(std::abs(p0.entry(1, 1)) < 1e-15);
  SquareMatrix pp = projector(ket_plus());
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(pp.entry(r, c) - Complex(0.5)) < 1e-15);
    }
  }
}

TEST_CASE("projector is hermitian idempotent unit-trace") {
  auto eng = rng::instance_engine(37, 0);
  for (int rep = 0; rep < 200; ++rep) {
    int dim = 2 + rep % 15;  // up to 16
    SquareMatrix p = projector(rng::haar_state(eng, dim));
    REQUIRE(p.is_hermitian(1e-12));
    REQUIRE((p.mat() * p.mat() - p.mat()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(std::abs(p.mat().trace() - Complex(1.0)) < 1e-12);
    REQUIRE(p.is_projector(1e-12));
  }
}

TEST_CASE("matrix predicates") {
  CHECK(SquareMatrix(pauli_y()).is_hermitian(1e-15));
  CHECK(SquareMatrix(pauli_y()).is_unitary(1e-15));
  CHECK_FALSE(SquareMatrix(pauli_y()).is_projector(1e-10));
  Eigen::Matrix2cd skew;
  skew << 0, 1, -1, 0;
  CHECK_FALSE(SquareMatrix(skew).is_hermitian(1e-10));
  CHECK_THROWS_AS(SquareMatrix(Eigen::MatrixXcd::Zero(2, 3)), InvalidArgument);
}
