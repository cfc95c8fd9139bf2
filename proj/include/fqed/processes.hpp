#pragma once

#include "fqed/ledger.hpp"
#include "fqed/spinor_algebra.hpp"
#include "fqed/states.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fqed {

enum class ProcessId { compton, bremsstrahlung, pair_annihilation, pair_production, electron_electron, electron_positron };
enum class Species { electron, positron, photon };
enum class Direction { incoming, outgoing };
enum class Frame { unspecified, lab, center_of_mass };

std::string_view process_name(ProcessId id);

//! One external line: fermions carry a spin label along ẑ, photons a helicity
//! about their own momentum.
struct ExternalLeg {
  std::string label;
  Species species = Species::electron;
  Direction direction = Direction::incoming;
  FourVector momentum;
  Spin spin = Spin::up;
  Helicity helicity = Helicity::plus;
};

struct LegSchema {
  std::string_view label;
  Species species;
  Direction direction;
};

/// Fixed leg layout of each process. The static nucleus of bremsstrahlung and
/// pair production is not a leg; its charge lives in KinematicConfig.
std::span<const LegSchema> process_schema(ProcessId id);

struct KinematicConfig {
  ProcessId process = ProcessId::compton;
  std::vector<ExternalLeg> legs;
  double mass = 1.0;
  double nucleus_charge = 1.0;
  Frame frame = Frame::unspecified;

  const ExternalLeg& leg(std::string_view label) const;
  ExternalLeg& leg(std::string_view label);

  /// Leg layout, mass shells, light cones and conservation (δ⁴ for 2→2,
  /// energy only with a static nucleus). Throws DomainError.
  void validate() const;
};

/// Legs in schema order with the given momenta; spins up, helicities plus.
KinematicConfig make_config(ProcessId id, std::span<const FourVector> momenta, double mass = 1.0, double Z = 1.0);

//! Support of the stripped δ-function: δ⁴ or δ(E) only.
struct ConservationRecord {
  bool four_momentum = true;
  FourVector residual;
};

struct ReducedAmplitude {
  complex value;
  NormalizationLedger ledger;
  ConservationRecord conservation;
};

/// Prefactor of the final printed S-matrix element, with leg labels in the
/// ω and E symbols.
NormalizationLedger printed_prefactor(ProcessId id);

/// The same ledger composed literally from the factor catalogue (couplings,
/// vertex factors, propagator box factors, wave normalizations, spinor
/// conversions). Differs from printed_prefactor by a V,T residual.
NormalizationLedger composed_prefactor(ProcessId id);

// Direct evaluations. `value` uses u†u = 1 spinors and carries no couplings.
ReducedAmplitude compton_amplitude(const KinematicConfig& cfg);
ReducedAmplitude bremsstrahlung_amplitude(const KinematicConfig& cfg);
ReducedAmplitude pair_annihilation_amplitude(const KinematicConfig& cfg);
ReducedAmplitude pair_production_amplitude(const KinematicConfig& cfg);
ReducedAmplitude electron_electron_amplitude(const KinematicConfig& cfg);
ReducedAmplitude electron_positron_amplitude(const KinematicConfig& cfg);

/// Dispatch on cfg.process.
ReducedAmplitude amplitude(const KinematicConfig& cfg);

//! Wavefunction slot of a base-process core: fermion slots use column or
//! row, photon slots use polarization (already conjugated where outgoing).
struct Slot {
  FourVector momentum;
  ComplexVector4 column = ComplexVector4::Zero();
  ComplexRow4 row = ComplexRow4::Zero();
  ComplexFourVector polarization;
};

using SlotMap = std::map<std::string, Slot, std::less<>>;

/// Slots of a base process (compton, bremsstrahlung, electron_electron)
/// filled from its own legs.
SlotMap direct_slots(const KinematicConfig& cfg);

// Base-process cores over slots. Compton: p_i, k_i, p_f, k_f.
// Bremsstrahlung: p_i, p_f, k_f. Electron-electron: p_i1, p_i2, p_f1, p_f2.
complex compton_core(const SlotMap& slots, double mass);
complex bremsstrahlung_core(const SlotMap& slots, double mass);
complex electron_electron_core(const SlotMap& slots, double mass);

struct Substitution {
  std::string base_label;
  std::string target_label;
  int sign = 1;
};

//! Base leg → (±) target leg. The slot momentum is sign × target momentum and
//! the slot wavefunction follows the target leg (u/ū, v/v̄, ε/ε*).
struct SubstitutionTable {
  ProcessId base = ProcessId::compton;
  ProcessId target = ProcessId::compton;
  std::vector<Substitution> entries;

  /// Bijection between the two leg sets with matching slot kinds and unit
  /// signs. Throws DomainError.
  void validate() const;
};

SubstitutionTable identity_table(ProcessId base);
SubstitutionTable compton_to_pair_annihilation();
SubstitutionTable bremsstrahlung_to_pair_production();
SubstitutionTable electron_electron_to_electron_positron();

ReducedAmplitude apply_crossing(ProcessId base, const SubstitutionTable& table, const KinematicConfig& target);

/// Initial-state averaged Σ|M|² over all spin and helicity labels, in the
/// ūu = 2m normalization with couplings e = √(4πα) and Z applied.
double spin_summed_squared(const KinematicConfig& cfg, double alpha);

/// dσ/dΩ for a 2→2 configuration: lab frame for Compton on a resting
/// electron, otherwise the centre-of-mass formula. DomainError for brems and
/// pair production.
double differential_cross_section(const KinematicConfig& cfg, double m2_avg);

// Frame builders. Angles in radians, energies in units of the mass.

/// Electron at rest, photon along ẑ, scattered photon at (θ, φ).
KinematicConfig compton_lab(double omega_i, double theta, double phi = 0.0, double mass = 1.0);
/// CM frame, each fermion with energy E, e⁻ along ẑ, first photon at θ.
KinematicConfig annihilation_cm(double energy, double theta, double mass = 1.0);
KinematicConfig moller_cm(double energy, double theta, double mass = 1.0);
KinematicConfig bhabha_cm(double energy, double theta, double mass = 1.0);
/// Incoming electron of energy E_i along ẑ, photon at θ_k in the xz plane,
/// outgoing electron at (θ_e, φ_e) with E_f = E_i - ω.
KinematicConfig bremsstrahlung_kinematics(double energy_i, double omega, double theta_k, double theta_e, double phi_e,
                                          double Z = 1.0, double mass = 1.0);
/// Photon along ẑ, positron at θ_+ in the xz plane, electron at (θ_-, φ_-).
KinematicConfig pair_production_kinematics(double omega, double energy_plus, double theta_plus, double theta_minus,
                                           double phi_minus, double Z = 1.0, double mass = 1.0);

} // namespace fqed
