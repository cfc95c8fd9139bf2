#include "fqed/selftest.hpp"

#include "fqed/classical.hpp"
#include "fqed/format.hpp"
#include "fqed/loops.hpp"
#include "fqed/processes.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

namespace fqed {

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool ok;
  std::string detail;
};

Check within(double got, double want, double tol, const char* what) {
  const double err = want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
  return {err <= tol, std::string(what) + " " + format_double(err) + " (tol " + format_double(tol) + ")"};
}

FourVector on_shell(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double x = u(rng), y = u(rng), z = u(rng);
  return {std::sqrt(1.0 + x * x + y * y + z * z), x, y, z};
}

Check clifford() {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      ComplexMatrix4 ac = gamma(a) * gamma(b) + gamma(b) * gamma(a);
      ac.diagonal().array() -= 2.0 * (a == b ? metric(a) : 0.0);
      worst = std::max(worst, ac.norm());
    }
  }
  return within(worst, 0.0, 0.0, "max |{γ,γ} - 2g|");
}

Check dirac_residual() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const FourVector p = on_shell(rng);
    for (Spin s : {Spin::up, Spin::down}) {
      ComplexMatrix4 minus = slash(p), plus = slash(p);
      minus.diagonal().array() -= 1.0;
      plus.diagonal().array() += 1.0;
      worst = std::max(worst, (minus * electron_spinor(p, s, EnergySign::forward).c).norm());
      worst = std::max(worst, (plus * electron_spinor(p, s, EnergySign::backward).c).norm());
    }
  }
  return within(worst, 0.0, 1e-12, "max residual");
}

Check klein_nishina() {
  const auto cfg = compton_lab(1.0, kPi / 2);
  const double e2 = 4.0 * kPi * kFineStructure;
  return within(spin_summed_squared(cfg, kFineStructure), 2.0 * e2 * e2 * (0.5 + 2.0 - 1.0), 1e-12, "relative error");
}

Check ward() {
  auto cfg = compton_lab(0.7, 1.1, 0.4);
  SlotMap s = direct_slots(cfg);
  const double M = std::abs(compton_core(s, 1.0));
  s["k_i"].polarization = ComplexFourVector(cfg.leg("k_i").momentum);
  return within(std::abs(compton_core(s, 1.0)) / M, 0.0, 1e-10, "|M(ε→k)|/|M|");
}

Check exchange() {
  auto cfg = moller_cm(1.7, 0.9);
  cfg.leg("p_i2").spin = Spin::down;
  auto swapped = cfg;
  std::swap(swapped.leg("p_f1").momentum, swapped.leg("p_f2").momentum);
  std::swap(swapped.leg("p_f1").spin, swapped.leg("p_f2").spin);
  const bool ok = electron_electron_amplitude(swapped).value == -electron_electron_amplitude(cfg).value;
  return {ok, ok ? "exact sign flip" : "antisymmetry broken"};
}

Check crossing() {
  const auto cfg = annihilation_cm(1.4, 0.8);
  const complex a = apply_crossing(ProcessId::compton, compton_to_pair_annihilation(), cfg).value;
  const complex b = pair_annihilation_amplitude(cfg).value;
  return within(std::abs(a - b) / std::abs(b), 0.0, 1e-12, "relative difference");
}

Check vp_limit() {
  return within(vacuum_polarization_finite(1e-3).real(), kFineStructure / (15.0 * kPi) * 1e-3, 1e-2, "relative error");
}

Check vp_threshold() {
  bool ok = vacuum_polarization_finite(3.99).imag() == 0.0 && vacuum_polarization_finite(4.01).imag() < 0.0 &&
            vacuum_polarization_finite(0.0) == complex{} && std::abs(positronium_vacuum_check()) <= 1e-12;
  return {ok, ok ? "Im zero below 4m², negative above; Π̄(0) = 0" : "threshold structure broken"};
}

Check self_energy_pole_projection() {
  const FourVector rest{1, 0, 0, 0};
  const auto u = electron_spinor(rest, Spin::up, EnergySign::forward);
  const complex v = (u.bar() * self_energy_pole(rest) * u.c)(0, 0);
  return within(v.real(), 3.0 * kFineStructure / (4.0 * kPi), 1e-10, "relative error");
}

Check width_sign() {
  SpectrumInput s;
  s.levels = {{"d", 0.0}, {"b", -0.3}};
  s.currents.emplace(std::make_pair(std::string("d"), std::string("b")),
                     TransitionCurrent::constant({0, 0.02, 0, 0}, 1.0));
  const double up = energy_shift(s, "d").imag();
  const double down = energy_shift(s, "b").imag();
  const bool ok = up < 0.0 && down > 0.0;
  return {ok, "Im ΔE(upper) = " + format_double(up) + ", Im ΔE(lower) = " + format_double(down)};
}

Check free_motion() {
  ElectronState s;
  s.p = {std::sqrt(1.09), 0.3, 0.0, 0.0};
  s.z = ComplexVector4(0.8, complex(0.1, 0.2), -0.3, 0.1);
  IntegrationOptions opt;
  opt.tau_span = 10.0;
  opt.dt = 1e-3;
  opt.sample_every = 1000;
  const auto t = integrate_electron(s, nullptr, opt);
  const auto& last = t.samples.back();
  const double err = (last.z - exact_free_electron(s.z, s.p, last.tau)).cwiseAbs().maxCoeff();
  return within(err, 0.0, 1e-8, "max |z - z_exact|");
}

} // namespace

std::vector<SelftestResult> run_selftest() {
  const std::pair<const char*, std::function<Check()>> checks[] = {
      {"clifford_algebra", clifford},
      {"dirac_wave_equation", dirac_residual},
      {"klein_nishina_lab_90deg", klein_nishina},
      {"compton_ward_identity", ward},
      {"moller_exchange_antisymmetry", exchange},
      {"crossing_compton_to_annihilation", crossing},
      {"vacuum_polarization_small_k", vp_limit},
      {"vacuum_polarization_threshold", vp_threshold},
      {"self_energy_pole_on_shell", self_energy_pole_projection},
      {"energy_shift_width_sign", width_sign},
      {"free_electron_rk4", free_motion},
  };
  std::vector<SelftestResult> out;
  for (const auto& [name, fn] : checks) {
    try {
      const Check c = fn();
      out.push_back({name, c.ok, c.detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return out;
}

} // namespace fqed
