#include "fqed/loops.hpp"

#include "fqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fqed {

namespace {

constexpr double kPi = std::numbers::pi;

// ln(4π)/2 - γ_E/2 - ln m, the ε⁰ remainder of Γ(1+ε/2)(4π)^{ε/2}m^{-ε}/ε.
double scheme_constant(double m) { return 0.5 * std::log(4.0 * kPi) - 0.5 * kEulerGamma - std::log(m); }

} // namespace

void LoopConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("LoopConfig: mass must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("LoopConfig: alpha must be positive");
  quad.validate();
}

// ---- vacuum polarization ---------------------------------------------------

complex vacuum_polarization_finite(double k2, const LoopConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(k2)) throw DomainError("vacuum_polarization_finite: k2 must be finite");
  if (k2 == 0.0) return {};
  const double r = k2 / (cfg.mass * cfg.mass);
  const Integrand re = [r](double x) {
    const double w = x * (1.0 - x);
    const double arg = 1.0 - r * w;
    return arg == 0.0 ? 0.0 : w * std::log(std::abs(arg));
  };
  const double pre = -2.0 * cfg.alpha / kPi;
  if (r < 4.0) return pre * integrate(re, 0.0, 1.0, cfg.quad);

  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 / r));
  const double xm = 0.5 * (1.0 - root);
  const double xp = 0.5 * (1.0 + root);
  if (!(xp > xm)) {
    // r = 4: the two log zeros merge at x = 1/2 into log(1-2x)², which the
    // sin² map over-resolves; plain extrapolation handles it.
    return pre * (integrate(re, 0.0, 0.5, cfg.quad) + integrate(re, 0.5, 1.0, cfg.quad));
  }
  double real = integrate_endpoint_smoothed(re, 0.0, xm, cfg.quad) + integrate_endpoint_smoothed(re, xp, 1.0, cfg.quad);
  double imag = 0.0;
  {
    real += integrate_endpoint_smoothed(re, xm, xp, cfg.quad);
    imag = kPi * integrate([](double x) { return x * (1.0 - x); }, xm, xp, cfg.quad);
  }
  return pre * complex{real, imag};
}

LaurentValue<complex> vacuum_polarization_pole(const LoopConfig& cfg) {
  cfg.validate();
  const double c = 2.0 * cfg.alpha / (3.0 * kPi);
  return {c, c * scheme_constant(cfg.mass)};
}

LaurentValue<complex> vacuum_polarization_scalar(double k2, const LoopConfig& cfg) {
  LaurentValue<complex> v = vacuum_polarization_pole(cfg);
  v.finite += vacuum_polarization_finite(k2, cfg);
  return v;
}

ComplexMatrix4 vacuum_polarization_tensor(const FourVector& k, const LoopConfig& cfg) {
  if (!k.is_finite()) throw DomainError("vacuum_polarization_tensor: non-finite k");
  const double k2 = minkowski_dot(k, k);
  const complex pi = vacuum_polarization_finite(k2, cfg);
  ComplexMatrix4 t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const double g = mu == nu ? metric(mu) : 0.0;
      t(mu, nu) = (g * k2 - k[mu] * k[nu]) * pi;
    }
  }
  return t;
}

LaurentValue<complex> vacuum_polarization_insertion(const FourVector& k, const LoopConfig& cfg) {
  if (!k.is_finite()) throw DomainError("vacuum_polarization_insertion: non-finite k");
  // g_{μν}(g^{μν}k² - k^μk^ν) = 3k²; a†Σ⁰a = 2 for each longitudinal photon.
  const double k2 = minkowski_dot(k, k);
  const double weight = 2.0 * 2.0 * 3.0 * k2;
  if (weight == 0.0) return {};
  return vacuum_polarization_scalar(k2, cfg) * weight;
}

complex positronium_vacuum_check(const LoopConfig& cfg) { return vacuum_polarization_insertion(FourVector{}, cfg).finite; }

// ---- self-energy -----------------------------------------------------------

SelfEnergyCoefficients self_energy_coefficients(double p2, const LoopConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(p2)) throw DomainError("self_energy: p^2 must be finite");
  const double m = cfg.mass;
  const double r = p2 / (m * m);
  // L(z) = log|1 - r(1-z)|, with -iπ where the argument is negative (z < z0).
  const auto L = [r](double z) {
    const double arg = 1.0 - r * (1.0 - z);
    return arg == 0.0 ? 0.0 : std::log(std::abs(arg));
  };
  const Integrand fa = [&](double z) { return (1.0 - z) * (1.0 + L(z)); };
  const Integrand fb = [&](double z) { return 1.0 + 2.0 * L(z); };

  complex A, B;
  if (r <= 1.0) {
    A = integrate_endpoint_smoothed(fa, 0.0, 1.0, cfg.quad);
    B = integrate_endpoint_smoothed(fb, 0.0, 1.0, cfg.quad);
  } else {
    const double z0 = 1.0 - 1.0 / r;
    const double a_re = integrate_endpoint_smoothed(fa, 0.0, z0, cfg.quad) + integrate_endpoint_smoothed(fa, z0, 1.0, cfg.quad);
    const double b_re = integrate_endpoint_smoothed(fb, 0.0, z0, cfg.quad) + integrate_endpoint_smoothed(fb, z0, 1.0, cfg.quad);
    const double a_im = -kPi * integrate([](double z) { return 1.0 - z; }, 0.0, z0, cfg.quad);
    const double b_im = -2.0 * kPi * z0;
    A = {a_re, a_im};
    B = {b_re, b_im};
  }

  const double pre = cfg.alpha / (2.0 * kPi);
  const double c = scheme_constant(m);
  SelfEnergyCoefficients out;
  out.scalar.pole = cfg.alpha / kPi;
  out.slash.pole = -cfg.alpha / (4.0 * kPi);
  out.scalar.finite = pre * (2.0 * c + 1.0 - B);
  out.slash.finite = pre * (-0.5 * c - 0.375 + A);
  return out;
}

LaurentValue<ComplexMatrix4> self_energy(const FourVector& p, const LoopConfig& cfg) {
  if (!p.is_finite()) throw DomainError("self_energy: non-finite momentum");
  const double p2 = minkowski_dot(p, p);
  if (p2 == cfg.mass * cfg.mass) {
    throw DomainError("self_energy: p^2 = m^2 exactly, the finite part has a logarithmic singularity on shell");
  }
  const SelfEnergyCoefficients c = self_energy_coefficients(p2, cfg);
  const ComplexMatrix4 id = ComplexMatrix4::Identity() * cfg.mass;
  const ComplexMatrix4 ps = slash(p);
  LaurentValue<ComplexMatrix4> out;
  out.pole = id * c.scalar.pole + ps * c.slash.pole;
  out.finite = id * c.scalar.finite + ps * c.slash.finite;
  return out;
}

ComplexMatrix4 self_energy_pole(const FourVector& p, const LoopConfig& cfg) {
  cfg.validate();
  if (!p.is_finite()) throw DomainError("self_energy_pole: non-finite momentum");
  const double m = cfg.mass;
  ComplexMatrix4 bracket = -slash(p);
  bracket.diagonal().array() += 4.0 * m;  // 3m - (p̸ - m)
  return bracket * (cfg.alpha / (4.0 * kPi));
}

// ---- energy shift ----------------------------------------------------------

TransitionCurrent TransitionCurrent::tabulated(std::vector<double> k, std::vector<FourVector> j) {
  if (k.empty() || k.size() != j.size()) throw DomainError("current table: need matching, nonempty k and J columns");
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (!(k[i] > k[i - 1])) throw DomainError("current table: k must be strictly increasing");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i]) || !j[i].is_finite()) throw DomainError("current table: non-finite entry");
  }
  TransitionCurrent c;
  c.k_limit = k.back();
  c.fn = [k = std::move(k), j = std::move(j)](double q) -> FourVector {
    if (q <= k.front()) return j.front();
    if (q >= k.back()) return j.back();
    const auto it = std::upper_bound(k.begin(), k.end(), q);
    const std::size_t hi = static_cast<std::size_t>(it - k.begin());
    const std::size_t lo = hi - 1;
    const double t = (q - k[lo]) / (k[hi] - k[lo]);
    return j[lo] * (1.0 - t) + j[hi] * t;
  };
  return c;
}

TransitionCurrent TransitionCurrent::constant(const FourVector& j, double k_limit) {
  if (!(k_limit > 0.0) || !j.is_finite()) throw DomainError("constant current: need finite J and k_limit > 0");
  return {[j](double) { return j; }, k_limit};
}

const TransitionCurrent* SpectrumInput::current(const std::string& a, const std::string& b) const {
  if (auto it = currents.find({a, b}); it != currents.end()) return &it->second;
  if (auto it = currents.find({b, a}); it != currents.end()) return &it->second;
  return nullptr;
}

const Level& SpectrumInput::level(std::string_view label) const {
  for (const auto& l : levels) {
    if (l.label == label) return l;
  }
  throw DomainError("spectrum: unknown level " + std::string(label));
}

double SpectrumInput::cutoff() const {
  if (k_max) return *k_max;
  double k = 0.0;
  bool any = false;
  for (const auto& [key, c] : currents) {
    k = any ? std::min(k, c.k_limit) : c.k_limit;
    any = true;
  }
  return k;
}

void SpectrumInput::validate() const {
  if (levels.empty()) throw DomainError("spectrum: no levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i].energy)) throw DomainError("spectrum: non-finite energy for " + levels[i].label);
    for (std::size_t j = 0; j < i; ++j) {
      if (levels[i].label == levels[j].label) throw DomainError("spectrum: duplicate level " + levels[i].label);
    }
  }
  for (const auto& [key, c] : currents) {
    level(key.first);
    level(key.second);
    if (!c.fn) throw DomainError("spectrum: empty current " + key.first + " " + key.second);
  }
  if (k_max && !(*k_max > 0.0)) throw DomainError("spectrum: k_max must be positive");
}

namespace {

bool vanishes(const TransitionCurrent& c, double kmax) {
  for (int i = 0; i <= 32; ++i) {
    const FourVector j = c(kmax * i / 32.0);
    if (j.t != 0.0 || j.x != 0.0 || j.y != 0.0 || j.z != 0.0) return false;
  }
  return true;
}

} // namespace

EnergyShiftTerms energy_shift_terms(const SpectrumInput& spec, const std::string& d, const LoopConfig& cfg) {
  cfg.validate();
  spec.validate();
  const Level& ld = spec.level(d);
  const double K = spec.cutoff();
  // -2πe²·4π/(2π)³ with e² = 4πα.
  const double C = -4.0 * cfg.alpha;

  double static_integral = 0.0;
  double lamb_integral = 0.0;
  double shell = 0.0;

  const TransitionCurrent* jdd = spec.current(d, d);
  for (const auto& lb : spec.levels) {
    if (jdd) {
      if (const TransitionCurrent* jbb = spec.current(lb.label, lb.label)) {
        if (!(K > 0.0)) throw DomainError("energy_shift: photon cutoff k_max must be positive");
        static_integral += integrate([&](double k) { return minkowski_dot((*jdd)(k), (*jbb)(k)); }, 0.0, K, cfg.quad);
      }
    }
    if (lb.label == d) continue;
    const TransitionCurrent* jdb = spec.current(d, lb.label);
    if (!jdb) continue;
    const double delta = ld.energy - lb.energy;
    if (delta == 0.0) {
      if (vanishes(*jdb, K)) continue;
      throw DomainError("energy_shift: levels " + d + " and " + lb.label + " are degenerate with a nonzero current");
    }
    const double gap = std::abs(delta);
    if (!(gap < K)) {
      std::ostringstream os;
      os << "energy_shift: k_max = " << K << " does not exceed |E_d - E_b| = " << gap << " for " << lb.label;
      throw DomainError(os.str());
    }
    const auto g = [jdb](double k) {
      const FourVector j = (*jdb)(k);
      return minkowski_dot(j, j);
    };
    const Integrand half_kg = [&](double k) { return 0.5 * k * g(k); };
    // P∫ (k/2) g [1/(Δ+k) - 1/(Δ-k)] dk; exactly one of the two denominators vanishes inside (0, K).
    double term = 0.0;
    if (delta > 0.0) {
      term += integrate([&](double k) { return half_kg(k) / (delta + k); }, 0.0, K, cfg.quad);
      term += principal_value(half_kg, 0.0, K, gap, cfg.quad);
      shell += delta * g(delta);
    } else {
      term += principal_value(half_kg, 0.0, K, gap, cfg.quad);
      term += integrate([&](double k) { return half_kg(k) / (k - delta); }, 0.0, K, cfg.quad);
      shell -= gap * g(gap);
    }
    lamb_integral += term;
  }

  EnergyShiftTerms out;
  out.static_term = -C * static_integral;
  out.lamb_term = -C * lamb_integral;
  out.width_term = -C * (kPi / 2.0) * shell;
  out.total = {out.static_term + out.lamb_term, out.width_term};
  return out;
}

complex energy_shift(const SpectrumInput& spec, const std::string& level, const LoopConfig& cfg) {
  return energy_shift_terms(spec, level, cfg).total;
}

} // namespace fqed
