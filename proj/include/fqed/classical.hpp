#pragma once

#include "fqed/spinor_algebra.hpp"

#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace fqed {

//! Electron phase-space point. z̄ is never stored; it is z†γ⁰ on demand.
struct ElectronState {
  FourVector x;
  FourVector p;
  ComplexVector4 z = ComplexVector4::Zero();
  double tau = 0.0;

  ComplexRow4 zbar() const { return dirac_adjoint(z); }
  double zbar_z() const;
  /// z̄γ^μz
  FourVector velocity() const;
  /// z̄γ^μz p_μ
  double hamiltonian() const;
};

struct ElectronTangent {
  FourVector dx;
  FourVector dp;
  ComplexVector4 dz = ComplexVector4::Zero();
};

struct PhotonClassicalState {
  FourVector x;
  FourVector p;
  Eigen::Vector2cd eta = Eigen::Vector2cd::Zero();
  double tau = 0.0;

  double norm() const { return eta.squaredNorm(); }
  /// η†σ^μη
  FourVector velocity() const;
};

struct PhotonTangent {
  FourVector dx;
  FourVector dp;
  Eigen::Vector2cd deta = Eigen::Vector2cd::Zero();
};

//! Smooth external potential A^μ(x). gradient(ν, μ) = ∂A^ν/∂x^μ.
//! `charge` is e for the electron, e(λ) for the photon.
struct ExternalField {
  std::function<FourVector(const FourVector&)> potential;
  std::function<Eigen::Matrix4d(const FourVector&)> gradient;
  double charge = 1.0;
};

/// dz/dτ = -iγ^μ(p_μ - eA_μ)z, dx^μ/dτ = z̄γ^μz, dp^μ/dτ = -e z̄γ^νz ∂^μA_ν.
ElectronTangent electron_derivative(const ElectronState& s, const ExternalField* field = nullptr);

/// dη/dτ = -iσ^μ(p_μ - eB_μ)η, dx^μ/dτ = η†σ^μη, dp^μ/dτ = e η†σ^νη ∂^μB_ν.
PhotonTangent photon_derivative(const PhotonClassicalState& s, const ExternalField* field = nullptr);

/// exp(-ip̸τ) z0 by the matrix exponential.
ComplexVector4 exact_free_electron(const ComplexVector4& z0, const FourVector& p, double tau);

/// cos(Mτ) - i sin(Mτ) p̸/M with M = √(p²); DomainError unless p is timelike.
ComplexVector4 exact_free_electron_trig(const ComplexVector4& z0, const FourVector& p, double tau);

/// x(τ) for free motion, integrated in closed form with P± = (M ± p̸)/2M.
FourVector exact_free_position(const FourVector& x0, const ComplexVector4& z0, const FourVector& p, double tau);

struct IntegrationOptions {
  double tau_span = 100.0;
  double dt = 1e-3;
  std::size_t sample_every = 1;

  void validate() const;
};

struct ElectronSample {
  double tau = 0.0;
  FourVector x;
  FourVector p;
  ComplexVector4 z = ComplexVector4::Zero();
  double zbar_z = 0.0;
  double hamiltonian = 0.0;
};

struct PhotonSample {
  double tau = 0.0;
  FourVector x;
  FourVector p;
  Eigen::Vector2cd eta = Eigen::Vector2cd::Zero();
  double norm = 0.0;
};

template <class Sample>
struct Trajectory {
  std::vector<Sample> samples;
  bool aborted = false;   ///< a non-finite state was produced; samples end at the last valid one
  std::string reason;
};

using ElectronTrajectory = Trajectory<ElectronSample>;
using PhotonTrajectory = Trajectory<PhotonSample>;

/// Fixed-step RK4 from s0 over [τ0, τ0 + tau_span].
ElectronTrajectory integrate_electron(const ElectronState& s0, const ExternalField* field, const IntegrationOptions& opt);
PhotonTrajectory integrate_photon(const PhotonClassicalState& s0, const ExternalField* field, const IntegrationOptions& opt);

/// Angular frequency of the strongest non-DC line of a uniformly sampled
/// real signal (Hann window, zero padding, parabolic peak interpolation).
double dominant_frequency(std::span<const double> signal, double dt);

/// tau, x0..x3, p0..p3, re/im z0..z3, zbar_z, H.
void write_trajectory_csv(std::ostream& os, const ElectronTrajectory& t);

} // namespace fqed
