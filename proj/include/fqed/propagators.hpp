#pragma once

#include "fqed/ledger.hpp"
#include "fqed/spinor_algebra.hpp"

namespace fqed {

//! iε prescription and mass for momentum-space propagators.
//! epsilon is an absolute displacement in units of m²; 0 is allowed for
//! tree-level amplitudes, which guard their own poles.
struct PropagatorConfig {
  double epsilon = 1e-9;
  double mass = 1.0;

  static PropagatorConfig for_mass(double m, double relative_epsilon = 1e-9) { return {relative_epsilon * m * m, m}; }
  void validate() const;
};

/// (p̸ + m)/(p² - m² + iε), the rationalized inverse of (p̸ - m).
/// PoleError only for an exact pole with epsilon = 0.
ComplexMatrix4 fermion_propagator(const FourVector& p, const PropagatorConfig& cfg);

/// (1/(ω - |k| + iε) + 1/(ω + |k| - iε)) / 2ω, the transverse photon kernel.
/// DomainError for ω = |k| = 0; PoleError within ε of ω = ±|k|.
complex transverse_photon_kernel(double omega, double kmag, const PropagatorConfig& cfg);

/// Static Coulomb kernel 1/|k|² left after the δ(ω) integration of the
/// zero-energy longitudinal propagator. DomainError for kmag <= 0.
double longitudinal_photon_kernel(double kmag);

struct VacuumPropagator {
  double value = 1.0;
  NormalizationLedger ledger;
};

/// N_F = 1/(VT): numeric factor 1, all of the content lives in the ledger.
VacuumPropagator vacuum_propagator();

} // namespace fqed
