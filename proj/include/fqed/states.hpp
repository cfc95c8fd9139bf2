#pragma once

#include "fqed/ledger.hpp"
#include "fqed/spinor_algebra.hpp"

#include <string>

namespace fqed {

using Vector3 = Eigen::Vector3d;

enum class Spin { up, down };                  ///< χ^(s), s = +½ / -½ along ẑ
enum class EnergySign { forward, backward };   ///< positive / negative energy branch
enum class Helicity { plus, minus };
enum class PhotonKind { plus, minus, longitudinal, vacuum };

inline double spin_value(Spin s) { return s == Spin::up ? 0.5 : -0.5; }

//! Free electron spinor, normalized to u†u = 1.
struct DiracSpinor {
  ComplexVector4 c;
  FourVector momentum;
  Spin spin = Spin::up;
  EnergySign sign = EnergySign::forward;

  ComplexRow4 bar() const { return dirac_adjoint(c); }
};

/// Forward:  √((E+m)/2E) (χ, σ⃗·p⃗ χ/(E+m))ᵀ, satisfies (p̸ - m)u = 0.
/// Backward: √((E+m)/2E) (σ⃗·p⃗ χ/(E+m), χ)ᵀ, satisfies (p̸ + m)v = 0.
/// p must be on shell with p⁰ > 0; off-shell input throws DomainError carrying p² - m².
DiracSpinor electron_spinor(const FourVector& p, Spin s, EnergySign sign, double mass = 1.0);

/// Same family with χ quantized along p̂ instead of ẑ (ẑ when p⃗ = 0).
DiracSpinor helicity_spinor(const FourVector& p, Helicity h, EnergySign sign, double mass = 1.0);

/// Two-component Pauli spinor χ^(s) along ẑ.
Eigen::Vector2cd pauli_spinor(Spin s);

/// SU(2) element taking ẑ to `axis`: exp(-iφσ_z/2) exp(-iθσ_y/2).
ComplexMatrix2 su2_from_z(const Vector3& axis);

/// Transverse basis (ê₁, ê₂) with ê₁ × ê₂ = axis, from the same rotation.
std::pair<Vector3, Vector3> transverse_basis(const Vector3& axis);

//! Photon internal state on C²⊗C².
struct PhotonSpinor {
  ComplexVector4 a;
  double omega = 0.0;
  Vector3 k = Vector3::Zero();
  Vector3 axis = Vector3::UnitZ();
  PhotonKind kind = PhotonKind::plus;

  /// (p₀, p⃗) of the plane-wave factor: e^{-i(p₀t - p⃗·x)}.
  FourVector phase_momentum() const;
};

/// plus: |↑↑⟩, ω = k. minus: |↓↓⟩, ω = -k. longitudinal: (|↑↓⟩+|↓↑⟩)/√2, ω = 0.
/// vacuum: same spinor with ω = k = 0, never rotated. Other kinds are rotated onto `axis`.
PhotonSpinor photon_state(PhotonKind kind, double k, const Vector3& axis = Vector3::UnitZ());

/// ‖Σ^μ p_μ a‖ with p read from the plane-wave factor.
double wave_equation_residual(const PhotonSpinor& state);

/// a†Σ^μ a.
FourVector photon_current(const PhotonSpinor& state);

/// a†Σ^μΣ^ν a. Diagnostic only; amplitudes use polarization_vector.
complex photon_bilinear(const PhotonSpinor& state, int mu, int nu);

/// ε^μ_± = (0, ê₁ ± iê₂)/√2 for plus/minus states; DomainError otherwise.
ComplexFourVector polarization_vector(const PhotonSpinor& state);
ComplexFourVector polarization_vector(Helicity h, const Vector3& axis);

// Factor catalogue for the normalization ledger. Box factors V and T are
// never given numbers; they only appear as exponents.
namespace ledger_factors {

/// e(λ) = -e (VT)^{3/4}
NormalizationLedger coupling();
/// q(θ) = √(2πT/ω) for a longitudinal photon at a vertex.
NormalizationLedger longitudinal_vertex(const std::string& photon);
/// q(θ) = √(T/ω) for a transverse photon at a vertex.
NormalizationLedger transverse_vertex(const std::string& photon);
/// N_F = 1/(VT)
NormalizationLedger vacuum_propagator();
/// S_F box factor (VT)^{-1/4}
NormalizationLedger fermion_propagator();
/// 1/√(VT)
NormalizationLedger electron_wave();
/// 1/√(2VT)
NormalizationLedger photon_wave();
/// √(m/E): converts u†u = 1 spinors to ūu = 1.
NormalizationLedger spinor_conversion(const std::string& electron);

} // namespace ledger_factors

} // namespace fqed
