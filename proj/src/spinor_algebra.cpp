#include "fqed/spinor_algebra.hpp"

#include "fqed/errors.hpp"

#include <cmath>
#include <string>

namespace fqed {

namespace {

const complex I{0.0, 1.0};

void check_index(int mu, const char* what) {
  if (mu < 0 || mu > 3) {
    throw DomainError(std::string(what) + ": index " + std::to_string(mu) + " outside 0..3");
  }
}

std::array<ComplexMatrix2, 4> make_pauli() {
  std::array<ComplexMatrix2, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -I, I, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

std::array<ComplexMatrix4, 4> make_gamma() {
  const auto& s = pauli(0);
  std::array<ComplexMatrix4, 4> g;
  g[0].setZero();
  g[0].topLeftCorner<2, 2>() = s;
  g[0].bottomRightCorner<2, 2>() = -s;
  for (int i = 1; i < 4; ++i) {
    auto& gi = g[static_cast<std::size_t>(i)];
    gi.setZero();
    gi.topRightCorner<2, 2>() = pauli(i);
    gi.bottomLeftCorner<2, 2>() = -pauli(i);
  }
  return g;
}

std::array<ComplexMatrix4, 4> make_big_sigma() {
  const ComplexMatrix2 one = ComplexMatrix2::Identity();
  std::array<ComplexMatrix4, 4> out;
  for (int mu = 0; mu < 4; ++mu) {
    out[static_cast<std::size_t>(mu)] = kronecker(pauli(mu), one) + kronecker(one, pauli(mu));
  }
  return out;
}

} // namespace

double FourVector::operator[](int mu) const {
  switch (mu) {
  case 0: return t;
  case 1: return x;
  case 2: return y;
  case 3: return z;
  default: throw DomainError("FourVector: index " + std::to_string(mu) + " outside 0..3");
  }
}

double& FourVector::operator[](int mu) {
  switch (mu) {
  case 0: return t;
  case 1: return x;
  case 2: return y;
  case 3: return z;
  default: throw DomainError("FourVector: index " + std::to_string(mu) + " outside 0..3");
  }
}

FourVector& FourVector::operator+=(const FourVector& o) {
  t += o.t;
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

bool FourVector::is_finite() const {
  return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double FourVector::spatial_norm() const { return std::sqrt(x * x + y * y + z * z); }

ComplexFourVector ComplexFourVector::conj() const {
  return {std::conj(c[0]), std::conj(c[1]), std::conj(c[2]), std::conj(c[3])};
}

double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

complex minkowski_dot(const ComplexFourVector& a, const ComplexFourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

const ComplexMatrix2& pauli(int mu) {
  static const auto table = make_pauli();
  check_index(mu, "pauli");
  return table[static_cast<std::size_t>(mu)];
}

const ComplexMatrix4& gamma(int mu) {
  static const auto table = make_gamma();
  check_index(mu, "gamma");
  return table[static_cast<std::size_t>(mu)];
}

const ComplexMatrix4& big_sigma(int mu) {
  static const auto table = make_big_sigma();
  check_index(mu, "big_sigma");
  return table[static_cast<std::size_t>(mu)];
}

ComplexMatrix4 kronecker(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

ComplexMatrix4 slash(const FourVector& p) {
  if (!p.is_finite()) throw DomainError("slash: non-finite four-vector");
  return gamma(0) * p.t - gamma(1) * p.x - gamma(2) * p.y - gamma(3) * p.z;
}

ComplexMatrix4 slash(const ComplexFourVector& p) {
  return gamma(0) * p[0] - gamma(1) * p[1] - gamma(2) * p[2] - gamma(3) * p[3];
}

complex trace_product(std::span<const ComplexMatrix4> ms) {
  if (ms.empty()) throw DomainError("trace_product: empty matrix list");
  ComplexMatrix4 acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = acc * ms[i];
  return acc.trace();
}

ComplexRow4 dirac_adjoint(const ComplexVector4& psi) { return psi.adjoint() * gamma(0); }

FourVector dirac_current(const ComplexVector4& psi) {
  const ComplexRow4 bar = dirac_adjoint(psi);
  FourVector j;
  for (int mu = 0; mu < 4; ++mu) j[mu] = (bar * gamma(mu) * psi)(0, 0).real();
  return j;
}

} // namespace fqed
