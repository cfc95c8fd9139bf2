#include "fqed/states.hpp"

#include "fqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fqed {

namespace {

const complex I{0.0, 1.0};

void require_on_shell(const FourVector& p, double mass) {
  if (!p.is_finite()) throw DomainError("electron_spinor: non-finite momentum");
  if (!(mass > 0.0)) throw DomainError("electron_spinor: mass must be positive");
  if (!(p.t > 0.0)) throw DomainError("electron_spinor: p0 must be positive (the sign flag carries the time direction)");
  const double off = minkowski_dot(p, p) - mass * mass;
  const double scale = std::max(mass * mass, p.t * p.t);
  if (std::abs(off) > 1e-10 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "electron_spinor: momentum off shell, p^2 - m^2 = " << off;
    throw DomainError(os.str());
  }
}

void require_unit(const Vector3& axis) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-12) {
    throw DomainError("photon_state: axis must be a unit 3-vector");
  }
}

ComplexMatrix2 sigma_dot(const Vector3& v) { return pauli(1) * v.x() + pauli(2) * v.y() + pauli(3) * v.z(); }

DiracSpinor build(const FourVector& p, const Eigen::Vector2cd& chi, Spin label, EnergySign sign, double mass) {
  const double E = p.t;
  const double norm = std::sqrt((E + mass) / (2.0 * E));
  const Eigen::Vector2cd small = sigma_dot(Vector3(p.x, p.y, p.z)) * chi / (E + mass);
  DiracSpinor out;
  out.momentum = p;
  out.spin = label;
  out.sign = sign;
  if (sign == EnergySign::forward) {
    out.c << chi, small;
  } else {
    out.c << small, chi;
  }
  out.c *= norm;
  return out;
}

} // namespace

Eigen::Vector2cd pauli_spinor(Spin s) {
  return s == Spin::up ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
}

DiracSpinor electron_spinor(const FourVector& p, Spin s, EnergySign sign, double mass) {
  require_on_shell(p, mass);
  return build(p, pauli_spinor(s), s, sign, mass);
}

DiracSpinor helicity_spinor(const FourVector& p, Helicity h, EnergySign sign, double mass) {
  require_on_shell(p, mass);
  const double pn = p.spatial_norm();
  const Vector3 axis = pn > 0.0 ? Vector3(p.x / pn, p.y / pn, p.z / pn) : Vector3::UnitZ();
  const Spin s = h == Helicity::plus ? Spin::up : Spin::down;
  return build(p, su2_from_z(axis) * pauli_spinor(s), s, sign, mass);
}

ComplexMatrix2 su2_from_z(const Vector3& axis) {
  const double theta = std::acos(std::clamp(axis.z(), -1.0, 1.0));
  const double phi = std::atan2(axis.y(), axis.x());
  ComplexMatrix2 rz, ry;
  rz << std::exp(-I * phi / 2.0), 0, 0, std::exp(I * phi / 2.0);
  ry << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return rz * ry;
}

std::pair<Vector3, Vector3> transverse_basis(const Vector3& axis) {
  const double theta = std::acos(std::clamp(axis.z(), -1.0, 1.0));
  const double phi = std::atan2(axis.y(), axis.x());
  const Vector3 e1(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));
  const Vector3 e2(-std::sin(phi), std::cos(phi), 0.0);
  return {e1, e2};
}

FourVector PhotonSpinor::phase_momentum() const {
  switch (kind) {
  case PhotonKind::plus:
  case PhotonKind::minus:
  case PhotonKind::longitudinal:
    return {omega, k.x(), k.y(), k.z()};
  case PhotonKind::vacuum:
    return {};
  }
  return {};
}

PhotonSpinor photon_state(PhotonKind kind, double k, const Vector3& axis) {
  require_unit(axis);
  if (!std::isfinite(k) || k < 0.0) throw DomainError("photon_state: k must be finite and >= 0");
  if (kind == PhotonKind::vacuum && k != 0.0) throw DomainError("photon_state: the vacuum state has k = 0");
  if (kind != PhotonKind::vacuum && k == 0.0) {
    throw DomainError("photon_state: k = 0 is only allowed for the vacuum state");
  }

  ComplexVector4 az = ComplexVector4::Zero();
  double omega = 0.0;
  switch (kind) {
  case PhotonKind::plus:
    az(0) = 1.0;
    omega = k;
    break;
  case PhotonKind::minus:
    az(3) = 1.0;
    omega = -k;
    break;
  case PhotonKind::longitudinal:
  case PhotonKind::vacuum:
    az(1) = az(2) = 1.0 / std::sqrt(2.0);
    break;
  }
  // The vacuum carries no momentum, so there is no direction to rotate onto.
  const ComplexMatrix2 u = kind == PhotonKind::vacuum ? ComplexMatrix2::Identity() : su2_from_z(axis);
  PhotonSpinor out;
  out.a = kronecker(u, u) * az;
  out.omega = omega;
  out.k = k * axis;
  out.axis = axis;
  out.kind = kind;
  return out;
}

double wave_equation_residual(const PhotonSpinor& state) {
  const FourVector p = state.phase_momentum();
  const ComplexMatrix4 op = big_sigma(0) * p.t - big_sigma(1) * p.x - big_sigma(2) * p.y - big_sigma(3) * p.z;
  return (op * state.a).norm();
}

FourVector photon_current(const PhotonSpinor& state) {
  FourVector j;
  for (int mu = 0; mu < 4; ++mu) j[mu] = (state.a.adjoint() * big_sigma(mu) * state.a)(0, 0).real();
  return j;
}

complex photon_bilinear(const PhotonSpinor& state, int mu, int nu) {
  return (state.a.adjoint() * big_sigma(mu) * big_sigma(nu) * state.a)(0, 0);
}

ComplexFourVector polarization_vector(Helicity h, const Vector3& axis) {
  require_unit(axis);
  const auto [e1, e2] = transverse_basis(axis);
  const double s = h == Helicity::plus ? 1.0 : -1.0;
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r * (e1.x() + s * I * e2.x()), r * (e1.y() + s * I * e2.y()), r * (e1.z() + s * I * e2.z())};
}

ComplexFourVector polarization_vector(const PhotonSpinor& state) {
  switch (state.kind) {
  case PhotonKind::plus: return polarization_vector(Helicity::plus, state.axis);
  case PhotonKind::minus: return polarization_vector(Helicity::minus, state.axis);
  default:
    throw DomainError("polarization_vector: longitudinal and vacuum photons couple through Sigma^0, not a transverse vector");
  }
}

namespace ledger_factors {

NormalizationLedger coupling() {
  NormalizationLedger l;
  l.rotate_phase(2).times("e", 1).times("V", {3, 4}).times("T", {3, 4});
  return l;
}

NormalizationLedger longitudinal_vertex(const std::string& photon) {
  NormalizationLedger l;
  l.times("2pi", {1, 2}).times("T", {1, 2}).times("omega[" + photon + "]", {-1, 2});
  return l;
}

NormalizationLedger transverse_vertex(const std::string& photon) {
  NormalizationLedger l;
  l.times("T", {1, 2}).times("omega[" + photon + "]", {-1, 2});
  return l;
}

NormalizationLedger vacuum_propagator() {
  NormalizationLedger l;
  l.times("V", -1).times("T", -1);
  return l;
}

NormalizationLedger fermion_propagator() {
  NormalizationLedger l;
  l.times("V", {-1, 4}).times("T", {-1, 4});
  return l;
}

NormalizationLedger electron_wave() {
  NormalizationLedger l;
  l.times("V", {-1, 2}).times("T", {-1, 2});
  return l;
}

NormalizationLedger photon_wave() {
  NormalizationLedger l;
  l.times("2", {-1, 2}).times("V", {-1, 2}).times("T", {-1, 2});
  return l;
}

NormalizationLedger spinor_conversion(const std::string& electron) {
  NormalizationLedger l;
  l.times("m", {1, 2}).times("E[" + electron + "]", {-1, 2});
  return l;
}

} // namespace ledger_factors

} // namespace fqed
