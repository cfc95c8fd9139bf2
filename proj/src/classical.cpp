#include "fqed/classical.hpp"

#include "fqed/errors.hpp"
#include "fqed/format.hpp"

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace fqed {

namespace {

const complex I{0.0, 1.0};

FourVector lower_gradient_contraction(const Eigen::Matrix4d& grad, const FourVector& u) {
  // ∂^μA_ν u^ν = g^{μμ} Σ_ν g_{νν} u^ν ∂A^ν/∂x^μ
  FourVector out;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += metric(nu) * u[nu] * grad(nu, mu);
    out[mu] = metric(mu) * s;
  }
  return out;
}

ComplexMatrix2 sigma_slash(const FourVector& q) {
  // σ^μ q_μ = q⁰ - σ⃗·q⃗
  return pauli(0) * q.t - pauli(1) * q.x - pauli(2) * q.y - pauli(3) * q.z;
}

bool finite(const ElectronState& s) { return s.x.is_finite() && s.p.is_finite() && s.z.allFinite(); }
bool finite(const PhotonClassicalState& s) { return s.x.is_finite() && s.p.is_finite() && s.eta.allFinite(); }

ElectronState advance(const ElectronState& s, const ElectronTangent& d, double h) {
  ElectronState o = s;
  o.x += d.dx * h;
  o.p += d.dp * h;
  o.z += d.dz * h;
  o.tau += h;
  return o;
}

PhotonClassicalState advance(const PhotonClassicalState& s, const PhotonTangent& d, double h) {
  PhotonClassicalState o = s;
  o.x += d.dx * h;
  o.p += d.dp * h;
  o.eta += d.deta * h;
  o.tau += h;
  return o;
}

template <class State, class Tangent, class Deriv>
State rk4_step(const State& s, double h, Deriv&& f) {
  const Tangent k1 = f(s);
  const Tangent k2 = f(advance(s, k1, h / 2));
  const Tangent k3 = f(advance(s, k2, h / 2));
  const Tangent k4 = f(advance(s, k3, h));
  Tangent sum;
  sum.dx = (k1.dx + k2.dx * 2.0 + k3.dx * 2.0 + k4.dx) * (1.0 / 6.0);
  sum.dp = (k1.dp + k2.dp * 2.0 + k3.dp * 2.0 + k4.dp) * (1.0 / 6.0);
  if constexpr (std::is_same_v<Tangent, ElectronTangent>) {
    sum.dz = (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz) / 6.0;
  } else {
    sum.deta = (k1.deta + 2.0 * k2.deta + 2.0 * k3.deta + k4.deta) / 6.0;
  }
  State o = advance(s, sum, h);
  o.tau = s.tau + h;
  return o;
}

ElectronSample sample(const ElectronState& s) { return {s.tau, s.x, s.p, s.z, s.zbar_z(), s.hamiltonian()}; }
PhotonSample sample(const PhotonClassicalState& s) { return {s.tau, s.x, s.p, s.eta, s.norm()}; }

template <class Sample, class State, class Tangent, class Deriv>
Trajectory<Sample> run(const State& s0, const IntegrationOptions& opt, Deriv&& f) {
  opt.validate();
  Trajectory<Sample> t;
  if (!finite(s0)) {
    t.aborted = true;
    t.reason = "initial state is not finite";
    return t;
  }
  const auto steps = static_cast<std::size_t>(std::llround(opt.tau_span / opt.dt));
  t.samples.reserve(steps / opt.sample_every + 2);
  State s = s0;
  t.samples.push_back(sample(s));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double tau = s0.tau + static_cast<double>(i) * opt.dt;
    State next = s;
    bool ok = true;
    try {
      next = rk4_step<State, Tangent>(s, opt.dt, f);
      ok = finite(next);
    } catch (const DomainError&) {
      ok = false;  // a stage hit a non-finite field value
    }
    next.tau = tau;
    if (!ok) {
      t.aborted = true;
      t.reason = "non-finite state at tau = " + format_double(tau);
      if (t.samples.back().tau != s.tau) t.samples.push_back(sample(s));
      return t;
    }
    s = next;
    if (i % opt.sample_every == 0 || i == steps) t.samples.push_back(sample(s));
  }
  return t;
}

} // namespace

double ElectronState::zbar_z() const { return (zbar() * z)(0, 0).real(); }

FourVector ElectronState::velocity() const { return dirac_current(z); }

double ElectronState::hamiltonian() const { return minkowski_dot(velocity(), p); }

FourVector PhotonClassicalState::velocity() const {
  FourVector v;
  for (int mu = 0; mu < 4; ++mu) v[mu] = (eta.adjoint() * pauli(mu) * eta)(0, 0).real();
  return v;
}

ElectronTangent electron_derivative(const ElectronState& s, const ExternalField* field) {
  FourVector kinetic = s.p;
  if (field && field->potential) kinetic = s.p - field->potential(s.x) * field->charge;
  ElectronTangent d;
  d.dz = -I * (slash(kinetic) * s.z);
  d.dx = s.velocity();
  if (field && field->gradient) d.dp = lower_gradient_contraction(field->gradient(s.x), d.dx) * (-field->charge);
  return d;
}

PhotonTangent photon_derivative(const PhotonClassicalState& s, const ExternalField* field) {
  FourVector kinetic = s.p;
  if (field && field->potential) kinetic = s.p - field->potential(s.x) * field->charge;
  PhotonTangent d;
  d.deta = -I * (sigma_slash(kinetic) * s.eta);
  d.dx = s.velocity();
  if (field && field->gradient) d.dp = lower_gradient_contraction(field->gradient(s.x), d.dx) * field->charge;
  return d;
}

ComplexVector4 exact_free_electron(const ComplexVector4& z0, const FourVector& p, double tau) {
  const ComplexMatrix4 gen = (-I * tau) * slash(p);
  const ComplexMatrix4 u = gen.exp();
  return u * z0;
}

ComplexVector4 exact_free_electron_trig(const ComplexVector4& z0, const FourVector& p, double tau) {
  const double p2 = minkowski_dot(p, p);
  if (!(p2 > 0.0)) throw DomainError("exact_free_electron_trig: p must be timelike");
  const double M = std::sqrt(p2);
  return std::cos(M * tau) * z0 - I * std::sin(M * tau) * (slash(p) * z0) / M;
}

FourVector exact_free_position(const FourVector& x0, const ComplexVector4& z0, const FourVector& p, double tau) {
  const double p2 = minkowski_dot(p, p);
  if (!(p2 > 0.0)) throw DomainError("exact_free_position: p must be timelike");
  const double M = std::sqrt(p2);
  const ComplexMatrix4 ps = slash(p);
  const ComplexVector4 a = (M * z0 + ps * z0) / (2.0 * M);
  const ComplexVector4 b = (M * z0 - ps * z0) / (2.0 * M);
  const ComplexRow4 abar = dirac_adjoint(a);
  const ComplexRow4 bbar = dirac_adjoint(b);
  const complex up = (std::exp(2.0 * I * M * tau) - 1.0) / (2.0 * I * M);
  FourVector x = x0;
  for (int mu = 0; mu < 4; ++mu) {
    const ComplexMatrix4& g = gamma(mu);
    const complex steady = (abar * g * a)(0, 0) + (bbar * g * b)(0, 0);
    const complex cross = (abar * g * b)(0, 0) * up + (bbar * g * a)(0, 0) * std::conj(up);
    x[mu] += (steady * tau + cross).real();
  }
  return x;
}

void IntegrationOptions::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integrate: dt must be positive");
  if (!(tau_span >= 0.0) || !std::isfinite(tau_span)) throw DomainError("integrate: tau span must be finite and >= 0");
  if (sample_every == 0) throw DomainError("integrate: sample_every must be >= 1");
}

ElectronTrajectory integrate_electron(const ElectronState& s0, const ExternalField* field, const IntegrationOptions& opt) {
  return run<ElectronSample, ElectronState, ElectronTangent>(
      s0, opt, [field](const ElectronState& s) { return electron_derivative(s, field); });
}

PhotonTrajectory integrate_photon(const PhotonClassicalState& s0, const ExternalField* field, const IntegrationOptions& opt) {
  return run<PhotonSample, PhotonClassicalState, PhotonTangent>(
      s0, opt, [field](const PhotonClassicalState& s) { return photon_derivative(s, field); });
}

double dominant_frequency(std::span<const double> signal, double dt) {
  if (signal.size() < 8) throw DomainError("dominant_frequency: need at least 8 samples");
  if (!(dt > 0.0)) throw DomainError("dominant_frequency: dt must be positive");
  const std::size_t n = signal.size();
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);
  std::size_t padded = 1;
  while (padded < 8 * n) padded <<= 1;
  std::vector<double> buf(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    buf[i] = (signal[i] - mean) * w;
  }
  Eigen::FFT<double> fft;
  std::vector<complex> spec;
  fft.fwd(spec, buf);
  const std::size_t half = padded / 2;
  std::size_t best = 1;
  for (std::size_t i = 2; i < half; ++i) {
    if (std::abs(spec[i]) > std::abs(spec[best])) best = i;
  }
  double shift = 0.0;
  if (best > 1 && best + 1 < half) {
    const double l = std::abs(spec[best - 1]);
    const double c = std::abs(spec[best]);
    const double r = std::abs(spec[best + 1]);
    const double den = l - 2.0 * c + r;
    if (den != 0.0) shift = 0.5 * (l - r) / den;
  }
  const double bin = (static_cast<double>(best) + shift);
  return 2.0 * std::numbers::pi * bin / (static_cast<double>(padded) * dt);
}

void write_trajectory_csv(std::ostream& os, const ElectronTrajectory& t) {
  os << "tau,x0,x1,x2,x3,p0,p1,p2,p3,re_z0,im_z0,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,zbar_z,H\n";
  for (const auto& s : t.samples) {
    os << format_double(s.tau);
    for (int mu = 0; mu < 4; ++mu) os << ',' << format_double(s.x[mu]);
    for (int mu = 0; mu < 4; ++mu) os << ',' << format_double(s.p[mu]);
    for (int a = 0; a < 4; ++a) os << ',' << format_double(s.z(a).real()) << ',' << format_double(s.z(a).imag());
    os << ',' << format_double(s.zbar_z) << ',' << format_double(s.hamiltonian) << '\n';
  }
}

} // namespace fqed
