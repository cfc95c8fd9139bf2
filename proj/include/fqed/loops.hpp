#pragma once

#include "fqed/constants.hpp"
#include "fqed/quadrature.hpp"
#include "fqed/spinor_algebra.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fqed {

//! pole/ε + finite. Vacuum polarization uses ε = 4 - d; the self-energy keeps
//! the ε of its own near-shell bracket, d = 4 + ε.
template <class T>
struct LaurentValue {
  static constexpr std::string_view scheme = "dimreg pole/eps + finite";

  T pole{};
  T finite{};

  LaurentValue operator+(const LaurentValue& o) const { return {T(pole + o.pole), T(finite + o.finite)}; }
  LaurentValue operator-(const LaurentValue& o) const { return {T(pole - o.pole), T(finite - o.finite)}; }
  LaurentValue operator-() const { return {T(-pole), T(-finite)}; }
  template <class S>
  LaurentValue operator*(const S& s) const {
    return {T(pole * s), T(finite * s)};
  }
  /// Truncated value at a given ε.
  T at(double eps) const { return T(pole / eps + finite); }
};

struct LoopConfig {
  double mass = 1.0;
  double alpha = kFineStructure;
  QuadratureConfig quad{};

  void validate() const;
};

/// Π̄(k²) = -(2α/π)∫₀¹ x(1-x) log[1 - (k²/m²)x(1-x)] dx, the subtracted scalar.
/// Real below 4m²; above, log of the negative argument is log|·| + iπ so Im Π̄ < 0.
complex vacuum_polarization_finite(double k2, const LoopConfig& cfg = {});

/// Π_d(0): pole 2α/3π, finite (2α/3π)(ln4π/2 - γ_E/2 - ln m).
LaurentValue<complex> vacuum_polarization_pole(const LoopConfig& cfg = {});

/// Π_d(k²) = Π_d(0) + Π̄(k²).
LaurentValue<complex> vacuum_polarization_scalar(double k2, const LoopConfig& cfg = {});

/// Π̄^{μν}(k) = (g^{μν}k² - k^μk^ν)Π̄(k²), contravariant indices.
ComplexMatrix4 vacuum_polarization_tensor(const FourVector& k, const LoopConfig& cfg = {});

/// Longitudinal photons at both ends: (a†Σ⁰a)² g_{μν}Π_d^{μν}(k) = 12 k² Π_d(k²).
LaurentValue<complex> vacuum_polarization_insertion(const FourVector& k, const LoopConfig& cfg = {});

/// ε⁰ part of the insertion at k = 0. The pole part vanishes there as well.
complex positronium_vacuum_check(const LoopConfig& cfg = {});

//! Ω = S·m·I + P·p̸ as Laurent coefficients.
struct SelfEnergyCoefficients {
  LaurentValue<complex> scalar;
  LaurentValue<complex> slash;
};

/// Coefficients at p² (any real value). The ε⁰ part stays finite at
/// p² = m²; only its p²-derivative diverges there.
SelfEnergyCoefficients self_energy_coefficients(double p2, const LoopConfig& cfg = {});

/// Ω(p) as a matrix Laurent series. DomainError at p² = m² exactly.
LaurentValue<ComplexMatrix4> self_energy(const FourVector& p, const LoopConfig& cfg = {});

/// Pole coefficient (α/4π)[3m - (p̸ - m)], defined on shell as well.
ComplexMatrix4 self_energy_pole(const FourVector& p, const LoopConfig& cfg = {});

//! Transition current J^μ_{db}(|k|), isotropic.
struct TransitionCurrent {
  std::function<FourVector(double)> fn;
  double k_limit = 0.0;

  FourVector operator()(double k) const { return fn(k); }

  /// Piecewise-linear through the samples; k must be strictly increasing.
  static TransitionCurrent tabulated(std::vector<double> k, std::vector<FourVector> j);
  static TransitionCurrent constant(const FourVector& j, double k_limit);
};

struct Level {
  std::string label;
  double energy = 0.0;
};

struct SpectrumInput {
  std::vector<Level> levels;
  /// Keyed by (d, b); lookup is symmetric in the pair.
  std::map<std::pair<std::string, std::string>, TransitionCurrent> currents;
  std::optional<double> k_max;

  const TransitionCurrent* current(const std::string& a, const std::string& b) const;
  const Level& level(std::string_view label) const;
  /// Explicit cutoff, else the smallest k_limit over the supplied currents.
  double cutoff() const;
  void validate() const;
};

struct EnergyShiftTerms {
  double static_term = 0.0;   ///< Σ_b -P∫ G dk piece
  double lamb_term = 0.0;     ///< principal-value transition piece
  double width_term = 0.0;    ///< δ-shell piece, imaginary
  complex total;
};

EnergyShiftTerms energy_shift_terms(const SpectrumInput& spec, const std::string& level, const LoopConfig& cfg = {});
complex energy_shift(const SpectrumInput& spec, const std::string& level, const LoopConfig& cfg = {});

} // namespace fqed
