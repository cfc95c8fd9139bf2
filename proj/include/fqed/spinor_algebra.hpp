#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>

namespace fqed {

using complex = std::complex<double>;
using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexMatrix2 = Eigen::Matrix2cd;
using ComplexVector4 = Eigen::Vector4cd;
using ComplexRow4 = Eigen::RowVector4cd;

//! Contravariant real four-vector, metric (+,-,-,-).
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int mu) const;
  double& operator[](int mu);

  FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
  FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
  FourVector operator-() const { return {-t, -x, -y, -z}; }
  FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
  FourVector& operator+=(const FourVector& o);

  bool is_finite() const;
  /// |p⃗|
  double spatial_norm() const;
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

//! Contravariant complex four-vector (polarization vectors, Ward substitutions).
struct ComplexFourVector {
  std::array<complex, 4> c{};

  ComplexFourVector() = default;
  ComplexFourVector(complex t, complex x, complex y, complex z) : c{t, x, y, z} {}
  explicit ComplexFourVector(const FourVector& v) : c{v.t, v.x, v.y, v.z} {}

  const complex& operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }
  complex& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }
  ComplexFourVector conj() const;
};

/// g^{μμ} for the diagonal metric.
constexpr double metric(int mu) { return mu == 0 ? 1.0 : -1.0; }

double minkowski_dot(const FourVector& a, const FourVector& b);
complex minkowski_dot(const ComplexFourVector& a, const ComplexFourVector& b);

/// Dirac–Pauli representation: γ⁰ = diag(1,1,-1,-1), γⁱ = [[0,σⁱ],[-σⁱ,0]].
/// Throws DomainError for mu outside 0..3.
const ComplexMatrix4& gamma(int mu);

/// σ^μ = (1, σ⃗).
const ComplexMatrix2& pauli(int mu);

/// Σ^μ = σ^μ⊗1 + 1⊗σ^μ on the photon's C²⊗C² internal space.
/// Basis order |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
const ComplexMatrix4& big_sigma(int mu);

ComplexMatrix4 kronecker(const ComplexMatrix2& a, const ComplexMatrix2& b);

/// γ^μ p_μ
ComplexMatrix4 slash(const FourVector& p);
ComplexMatrix4 slash(const ComplexFourVector& p);

/// Trace of the ordered product. Throws DomainError on an empty list.
complex trace_product(std::span<const ComplexMatrix4> ms);

/// Dirac adjoint row ψ̄ = ψ†γ⁰.
ComplexRow4 dirac_adjoint(const ComplexVector4& psi);

/// ψ̄ γ^μ ψ for each μ, as a real contravariant vector (the bilinear is real).
FourVector dirac_current(const ComplexVector4& psi);

} // namespace fqed
