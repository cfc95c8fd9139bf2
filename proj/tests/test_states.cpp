#include "support.hpp"

#include "fqed/errors.hpp"
#include "fqed/states.hpp"

#include <doctest.h>

#include <cmath>

using namespace fqed;
using fqed::test::Rng;

namespace {

const PhotonKind kKinds[] = {PhotonKind::plus, PhotonKind::minus, PhotonKind::longitudinal, PhotonKind::vacuum};

// A rotation and its SU(2) lift cos(θ/2) - i sin(θ/2) σ·n.
std::pair<Eigen::Matrix3d, ComplexMatrix2> random_rotation(Rng& rng) {
  const Vector3 n = test::random_unit(rng);
  const double theta = test::uniform(rng, 0.0, 6.28);
  const ComplexMatrix2 sn = pauli(1) * n.x() + pauli(2) * n.y() + pauli(3) * n.z();
  const ComplexMatrix2 u = std::cos(theta / 2) * ComplexMatrix2::Identity() - complex(0, std::sin(theta / 2)) * sn;
  return {Eigen::AngleAxisd(theta, n).toRotationMatrix(), u};
}

} // namespace

TEST_SUITE("states") {

TEST_CASE("electron spinor at rest") {
  const DiracSpinor u = electron_spinor({1, 0, 0, 0}, Spin::up, EnergySign::forward);
  CHECK((u.c - ComplexVector4(1, 0, 0, 0)).norm() == 0.0);
  const DiracSpinor v = electron_spinor({1, 0, 0, 0}, Spin::down, EnergySign::backward);
  CHECK((v.c - ComplexVector4(0, 0, 0, 1)).norm() == 0.0);
}

TEST_CASE("off-shell momentum is rejected with p^2 - m^2 in the message") {
  try {
    electron_spinor({1.5, 0, 0, 0}, Spin::up, EnergySign::forward);
    FAIL("no exception");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("p^2 - m^2 = 1.25") != std::string::npos);
  }
  CHECK_THROWS_AS(electron_spinor({-1, 0, 0, 0}, Spin::up, EnergySign::forward), DomainError);
}

TEST_CASE("Dirac equation, normalization and bilinears for random on-shell momenta") {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const double m = test::uniform(rng, 0.5, 2.0);
    const FourVector p = test::random_on_shell(rng, m, 5.0);
    for (Spin s : {Spin::up, Spin::down}) {
      const DiracSpinor u = electron_spinor(p, s, EnergySign::forward, m);
      const DiracSpinor v = electron_spinor(p, s, EnergySign::backward, m);
      ComplexMatrix4 minus = slash(p), plus = slash(p);
      minus.diagonal().array() -= m;
      plus.diagonal().array() += m;
      CHECK((minus * u.c).norm() <= 1e-12 * p.t);
      CHECK((plus * v.c).norm() <= 1e-12 * p.t);
      CHECK(u.c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(v.c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((u.bar() * u.c)(0, 0).real() == doctest::Approx(m / p.t).epsilon(1e-12));
      CHECK((v.bar() * v.c)(0, 0).real() == doctest::Approx(-m / p.t).epsilon(1e-12));
    }
  }
}

TEST_CASE("orthogonality within the forward and backward families") {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const FourVector p = test::random_on_shell(rng);
    const FourVector pr{p.t, -p.x, -p.y, -p.z};
    const auto u1 = electron_spinor(p, Spin::up, EnergySign::forward);
    const auto u2 = electron_spinor(p, Spin::down, EnergySign::forward);
    const auto v1 = electron_spinor(p, Spin::up, EnergySign::backward);
    const auto v2 = electron_spinor(p, Spin::down, EnergySign::backward);
    const auto v1r = electron_spinor(pr, Spin::up, EnergySign::backward);
    const auto v2r = electron_spinor(pr, Spin::down, EnergySign::backward);
    CHECK(std::abs(u1.c.dot(u2.c)) <= 1e-12);
    CHECK(std::abs(v1.c.dot(v2.c)) <= 1e-12);
    for (const auto* u : {&u1, &u2}) {
      for (const auto* v : {&v1, &v2}) CHECK(std::abs((u->bar() * v->c)(0, 0)) <= 1e-12);
      for (const auto* v : {&v1r, &v2r}) CHECK(std::abs(u->c.dot(v->c)) <= 1e-12);
    }
  }
}

TEST_CASE("completeness of the forward family") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const double m = 1.0;
    const FourVector p = test::random_on_shell(rng, m);
    ComplexMatrix4 uu = ComplexMatrix4::Zero(), vv = ComplexMatrix4::Zero();
    for (Spin s : {Spin::up, Spin::down}) {
      const auto u = electron_spinor(p, s, EnergySign::forward, m);
      const auto v = electron_spinor(p, s, EnergySign::backward, m);
      uu += u.c * u.bar();
      vv += v.c * v.bar();
    }
    ComplexMatrix4 pu = slash(p), pv = slash(p);
    pu.diagonal().array() += m;
    pv.diagonal().array() -= m;
    CHECK((uu - pu / (2 * p.t)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((vv - pv / (2 * p.t)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("helicity spinors are Dirac solutions with spin along p") {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const FourVector p = test::random_on_shell(rng);
    const auto u = helicity_spinor(p, Helicity::plus, EnergySign::forward);
    ComplexMatrix4 minus = slash(p);
    minus.diagonal().array() -= 1.0;
    CHECK((minus * u.c).norm() <= 1e-12 * p.t);
    const Vector3 n = Vector3(p.x, p.y, p.z).normalized();
    const ComplexMatrix2 sn = pauli(1) * n.x() + pauli(2) * n.y() + pauli(3) * n.z();
    const Eigen::Vector2cd upper = u.c.head<2>();
    CHECK((sn * upper - upper).norm() <= 1e-12);
  }
}

TEST_CASE("photon states along z") {
  const auto plus = photon_state(PhotonKind::plus, 1.0);
  CHECK((plus.a - ComplexVector4(1, 0, 0, 0)).norm() == 0.0);
  CHECK(plus.omega == 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  const auto lon = photon_state(PhotonKind::longitudinal, 1.0);
  CHECK((lon.a - ComplexVector4(0, r, r, 0)).norm() <= 1e-15);
  CHECK(lon.omega == 0.0);
  Rng rng(5);
  const auto vac = photon_state(PhotonKind::vacuum, 0.0, test::random_unit(rng));
  CHECK((vac.a - ComplexVector4(0, r, r, 0)).norm() <= 1e-15);
  CHECK(vac.omega == 0.0);
  CHECK(vac.k.norm() == 0.0);
  const auto vz = photon_state(PhotonKind::vacuum, 0.0);
  CHECK((vz.a - ComplexVector4(0, r, r, 0)).norm() <= 1e-15);
  const auto minus = photon_state(PhotonKind::minus, 2.0);
  CHECK((minus.a - ComplexVector4(0, 0, 0, 1)).norm() == 0.0);
  CHECK(minus.omega == -2.0);
}

TEST_CASE("photon_state preconditions") {
  CHECK_THROWS_AS(photon_state(PhotonKind::plus, 0.0), DomainError);
  CHECK_THROWS_AS(photon_state(PhotonKind::vacuum, 1.0), DomainError);
  CHECK_THROWS_AS(photon_state(PhotonKind::plus, 1.0, Vector3(1, 1, 0)), DomainError);
  CHECK_THROWS_AS(photon_state(PhotonKind::plus, -1.0), DomainError);
}

TEST_CASE("photon wave equation for all four families under random axes") {
  Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    const Vector3 axis = test::random_unit(rng);
    const double k = test::uniform(rng, 0.1, 5.0);
    for (PhotonKind kind : kKinds) {
      const auto s = photon_state(kind, kind == PhotonKind::vacuum ? 0.0 : k, axis);
      CHECK(wave_equation_residual(s) <= 1e-12);
      CHECK(s.a.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("rotational covariance of photon states") {
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    const Vector3 axis = test::random_unit(rng);
    const auto [R, U] = random_rotation(rng);
    const Vector3 raxis = (R * axis).normalized();
    for (PhotonKind kind : {PhotonKind::plus, PhotonKind::minus, PhotonKind::longitudinal}) {
      const auto a = photon_state(kind, 1.3, axis);
      const auto b = photon_state(kind, 1.3, raxis);
      const ComplexVector4 rotated = kronecker(U, U) * a.a;
      CHECK(std::abs(std::abs(rotated.dot(b.a)) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("photon currents") {
  auto close = [](const FourVector& a, const FourVector& b) {
    return std::abs(a.t - b.t) + std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z) <= 1e-14;
  };
  CHECK(close(photon_current(photon_state(PhotonKind::plus, 1.0)), {2, 0, 0, 2}));
  CHECK(close(photon_current(photon_state(PhotonKind::longitudinal, 1.0)), {2, 0, 0, 0}));
  CHECK(close(photon_current(photon_state(PhotonKind::minus, 1.0)), {2, 0, 0, -2}));
  CHECK(photon_bilinear(photon_state(PhotonKind::plus, 1.0), 0, 0) == complex(4.0, 0.0));
}

TEST_CASE("polarization vectors") {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexFourVector e = polarization_vector(photon_state(PhotonKind::plus, 1.0));
  CHECK(std::abs(e[0]) == 0.0);
  CHECK(std::abs(e[1] - complex(r, 0)) <= 1e-15);
  CHECK(std::abs(e[2] - complex(0, r)) <= 1e-15);
  CHECK(std::abs(e[3]) <= 1e-15);
  CHECK_THROWS_AS(polarization_vector(photon_state(PhotonKind::longitudinal, 1.0)), DomainError);
  CHECK_THROWS_AS(polarization_vector(photon_state(PhotonKind::vacuum, 0.0)), DomainError);

  Rng rng(27);
  for (int i = 0; i < 100; ++i) {
    const Vector3 n = test::random_unit(rng);
    const ComplexFourVector k(test::lightlike(2.0, n));
    for (Helicity h : {Helicity::plus, Helicity::minus}) {
      const ComplexFourVector eps = polarization_vector(h, n);
      CHECK(std::abs(minkowski_dot(eps, k)) <= 1e-14);
      CHECK(std::abs(minkowski_dot(eps, eps.conj()) + 1.0) <= 1e-14);
    }
    const ComplexFourVector ep = polarization_vector(Helicity::plus, n);
    const ComplexFourVector em = polarization_vector(Helicity::minus, n);
    CHECK(std::abs(minkowski_dot(ep, em.conj())) <= 1e-14);
  }
}

}
