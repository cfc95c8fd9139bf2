#include "fqed/propagators.hpp"

#include "fqed/errors.hpp"
#include "fqed/states.hpp"

#include <cmath>

namespace fqed {

void PropagatorConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("PropagatorConfig: epsilon must be >= 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("PropagatorConfig: mass must be > 0");
}

ComplexMatrix4 fermion_propagator(const FourVector& p, const PropagatorConfig& cfg) {
  cfg.validate();
  if (!p.is_finite()) throw DomainError("fermion_propagator: non-finite momentum");
  const complex denom{minkowski_dot(p, p) - cfg.mass * cfg.mass, cfg.epsilon};
  if (denom == complex{}) throw PoleError("fermion_propagator: momentum exactly on the mass shell with epsilon = 0");
  ComplexMatrix4 num = slash(p);
  num.diagonal().array() += cfg.mass;
  return num / denom;
}

complex transverse_photon_kernel(double omega, double kmag, const PropagatorConfig& cfg) {
  cfg.validate();
  if (!(kmag >= 0.0)) throw DomainError("transverse_photon_kernel: |k| must be >= 0");
  if (omega == 0.0 && kmag == 0.0) {
    throw DomainError("transverse_photon_kernel: omega = |k| = 0 is the vacuum state; use vacuum_propagator");
  }
  if (omega == 0.0) throw DomainError("transverse_photon_kernel: omega = 0 belongs to the longitudinal kernel");
  if (std::abs(omega - kmag) <= cfg.epsilon || std::abs(omega + kmag) <= cfg.epsilon) {
    throw PoleError("transverse_photon_kernel: omega on the light cone, kernel ~ 1/(i epsilon)");
  }
  const complex I{0.0, 1.0};
  return (1.0 / (omega - kmag + I * cfg.epsilon) + 1.0 / (omega + kmag - I * cfg.epsilon)) / (2.0 * omega);
}

double longitudinal_photon_kernel(double kmag) {
  if (!(kmag > 0.0) || !std::isfinite(kmag)) throw DomainError("longitudinal_photon_kernel: |k| must be > 0");
  return 1.0 / (kmag * kmag);
}

VacuumPropagator vacuum_propagator() { return {1.0, ledger_factors::vacuum_propagator()}; }

} // namespace fqed
