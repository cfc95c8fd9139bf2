#include "fqed/fqed.h"

#include "fqed/classical.hpp"
#include "fqed/errors.hpp"
#include "fqed/format.hpp"
#include "fqed/loops.hpp"
#include "fqed/processes.hpp"
#include "fqed/selftest.hpp"
#include "fqed/spectrum.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <string>

struct fqed_context {
  fqed::LoopConfig loop;
  std::string last_error;
};

struct fqed_spectrum {
  fqed::SpectrumInput input;
};

struct fqed_trajectory {
  fqed::ElectronTrajectory data;
};

namespace {

using fqed::complex;

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
fqed_status guarded(fqed_context* ctx, F&& f) {
  auto fail = [ctx](fqed_status s, const char* what) {
    if (ctx) ctx->last_error = what;
    return s;
  };
  try {
    if (ctx) ctx->last_error.clear();
    f();
    return FQED_OK;
  } catch (const fqed::PoleError& e) {
    return fail(FQED_ERR_POLE, e.what());
  } catch (const fqed::NumericError& e) {
    return fail(FQED_ERR_NUMERIC, e.what());
  } catch (const fqed::DomainError& e) {
    return fail(FQED_ERR_DOMAIN, e.what());
  } catch (const fqed::IoError& e) {
    return fail(FQED_ERR_IO, e.what());
  } catch (const InvalidArgument& e) {
    return fail(FQED_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FQED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FQED_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FQED_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (!p) throw InvalidArgument(std::string("null argument: ") + name);
}

fqed::FourVector four(const double v[4]) { return {v[0], v[1], v[2], v[3]}; }

fqed::ComplexVector4 spinor(const double re[4], const double im[4]) {
  fqed::ComplexVector4 z;
  for (int a = 0; a < 4; ++a) z(a) = {re[a], im[a]};
  return z;
}

void fill(const fqed_context* ctx, const fqed::KinematicConfig& cfg, fqed_process_result* out) {
  fqed_process_result r{};
  r.n_legs = static_cast<int>(cfg.legs.size());
  for (std::size_t i = 0; i < cfg.legs.size(); ++i) {
    for (int mu = 0; mu < 4; ++mu) r.momenta[i][mu] = cfg.legs[i].momentum[mu];
  }
  r.m2_spin_avg = fqed::spin_summed_squared(cfg, ctx->loop.alpha);
  const bool two_to_two = cfg.process != fqed::ProcessId::bremsstrahlung && cfg.process != fqed::ProcessId::pair_production;
  r.dsigma_domega = two_to_two ? fqed::differential_cross_section(cfg, r.m2_spin_avg)
                               : std::numeric_limits<double>::quiet_NaN();
  *out = r;
}

fqed::ProcessId process_id(fqed_process p) {
  switch (p) {
  case FQED_COMPTON: return fqed::ProcessId::compton;
  case FQED_BREMSSTRAHLUNG: return fqed::ProcessId::bremsstrahlung;
  case FQED_PAIR_ANNIHILATION: return fqed::ProcessId::pair_annihilation;
  case FQED_PAIR_PRODUCTION: return fqed::ProcessId::pair_production;
  case FQED_ELECTRON_ELECTRON: return fqed::ProcessId::electron_electron;
  case FQED_ELECTRON_POSITRON: return fqed::ProcessId::electron_positron;
  }
  throw InvalidArgument("unknown process");
}

void copy_string(const std::string& s, char* buf, std::size_t len) {
  if (s.size() + 1 > len) throw InvalidArgument("buffer too short, need " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

void laurent(const fqed::LaurentValue<complex>& v, fqed_laurent* out) {
  *out = {v.pole.real(), v.pole.imag(), v.finite.real(), v.finite.imag()};
}

} // namespace

extern "C" {

const char* fqed_version(void) { return "1.0.0"; }

const char* fqed_status_string(fqed_status status) {
  switch (status) {
  case FQED_OK: return "ok";
  case FQED_ERR_DOMAIN: return "domain error";
  case FQED_ERR_NUMERIC: return "numeric error";
  case FQED_ERR_POLE: return "pole error";
  case FQED_ERR_INVALID_ARGUMENT: return "invalid argument";
  case FQED_ERR_IO: return "i/o error";
  case FQED_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fqed_status fqed_context_create(fqed_context** out) {
  if (!out) return FQED_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) fqed_context{};
  return *out ? FQED_OK : FQED_ERR_INTERNAL;
}

void fqed_context_destroy(fqed_context* ctx) { delete ctx; }

const char* fqed_context_last_error(const fqed_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

fqed_status fqed_context_set_mass(fqed_context* ctx, double mass) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    fqed::LoopConfig c = ctx->loop;
    c.mass = mass;
    c.validate();
    ctx->loop = c;
  });
}

fqed_status fqed_context_set_alpha(fqed_context* ctx, double alpha) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    fqed::LoopConfig c = ctx->loop;
    c.alpha = alpha;
    c.validate();
    ctx->loop = c;
  });
}

fqed_status fqed_context_set_quadrature(fqed_context* ctx, double abs_tol, double rel_tol, size_t max_intervals) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    fqed::QuadratureConfig q{abs_tol, rel_tol, max_intervals};
    q.validate();
    ctx->loop.quad = q;
  });
}

double fqed_context_mass(const fqed_context* ctx) { return ctx ? ctx->loop.mass : std::nan(""); }
double fqed_context_alpha(const fqed_context* ctx) { return ctx ? ctx->loop.alpha : std::nan(""); }

fqed_status fqed_format_double(double v, char* buf, size_t len) {
  return guarded(nullptr, [&] {
    need(buf, "buf");
    copy_string(fqed::format_double(v), buf, len);
  });
}

// ---- processes -------------------------------------------------------------

fqed_status fqed_compton_lab(fqed_context* ctx, double omega_in, double theta, double phi, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx, fqed::compton_lab(omega_in, theta, phi, ctx->loop.mass), out);
  });
}

fqed_status fqed_annihilation_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx, fqed::annihilation_cm(energy, theta, ctx->loop.mass), out);
  });
}

fqed_status fqed_moller_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx, fqed::moller_cm(energy, theta, ctx->loop.mass), out);
  });
}

fqed_status fqed_bhabha_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx, fqed::bhabha_cm(energy, theta, ctx->loop.mass), out);
  });
}

fqed_status fqed_bremsstrahlung(fqed_context* ctx, double energy_in, double omega, double theta_k, double theta_e,
                                double phi_e, double Z, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx, fqed::bremsstrahlung_kinematics(energy_in, omega, theta_k, theta_e, phi_e, Z, ctx->loop.mass), out);
  });
}

fqed_status fqed_pair_production(fqed_context* ctx, double omega, double energy_plus, double theta_plus,
                                 double theta_minus, double phi_minus, double Z, fqed_process_result* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    fill(ctx,
         fqed::pair_production_kinematics(omega, energy_plus, theta_plus, theta_minus, phi_minus, Z, ctx->loop.mass),
         out);
  });
}

fqed_status fqed_amplitude(fqed_context* ctx, fqed_process process, const double momenta[][4], int n_legs,
                           const int* spins, const int* helicities, double Z, double* re, double* im, char* ledger,
                           size_t ledger_len) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(momenta, "momenta");
    need(re, "re");
    need(im, "im");
    if (n_legs < 0 || n_legs > FQED_MAX_LEGS) throw InvalidArgument("n_legs out of range");
    std::vector<fqed::FourVector> p;
    for (int i = 0; i < n_legs; ++i) p.push_back(four(momenta[i]));
    fqed::KinematicConfig cfg = fqed::make_config(process_id(process), p, ctx->loop.mass, Z);
    for (int i = 0; i < n_legs; ++i) {
      auto& leg = cfg.legs[static_cast<std::size_t>(i)];
      if (spins) leg.spin = spins[i] ? fqed::Spin::down : fqed::Spin::up;
      if (helicities) leg.helicity = helicities[i] ? fqed::Helicity::minus : fqed::Helicity::plus;
    }
    const fqed::ReducedAmplitude a = fqed::amplitude(cfg);
    if (ledger) copy_string(a.ledger.to_string(), ledger, ledger_len);
    *re = a.value.real();
    *im = a.value.imag();
  });
}

// ---- loops -----------------------------------------------------------------

fqed_status fqed_vacuum_polarization(fqed_context* ctx, double k2, double* re, double* im) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(re, "re");
    need(im, "im");
    const complex v = fqed::vacuum_polarization_finite(k2, ctx->loop);
    *re = v.real();
    *im = v.imag();
  });
}

fqed_status fqed_vacuum_polarization_pole(fqed_context* ctx, fqed_laurent* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(out, "out");
    laurent(fqed::vacuum_polarization_pole(ctx->loop), out);
  });
}

fqed_status fqed_positronium_check(fqed_context* ctx, double* re, double* im) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(re, "re");
    need(im, "im");
    const complex v = fqed::positronium_vacuum_check(ctx->loop);
    *re = v.real();
    *im = v.imag();
  });
}

fqed_status fqed_self_energy(fqed_context* ctx, double p2, fqed_laurent* scalar, fqed_laurent* slash) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(scalar, "scalar");
    need(slash, "slash");
    const auto c = fqed::self_energy_coefficients(p2, ctx->loop);
    laurent(c.scalar, scalar);
    laurent(c.slash, slash);
  });
}

fqed_status fqed_spectrum_load(fqed_context* ctx, const char* path, fqed_spectrum** out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(path, "path");
    need(out, "out");
    *out = new fqed_spectrum{fqed::load_spectrum(path)};
  });
}

fqed_status fqed_spectrum_parse(fqed_context* ctx, const char* text, fqed_spectrum** out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new fqed_spectrum{fqed::parse_spectrum(in)};
  });
}

void fqed_spectrum_destroy(fqed_spectrum* spec) { delete spec; }

size_t fqed_spectrum_level_count(const fqed_spectrum* spec) { return spec ? spec->input.levels.size() : 0; }

const char* fqed_spectrum_level_label(const fqed_spectrum* spec, size_t i) {
  if (!spec || i >= spec->input.levels.size()) return nullptr;
  return spec->input.levels[i].label.c_str();
}

double fqed_spectrum_level_energy(const fqed_spectrum* spec, size_t i) {
  if (!spec || i >= spec->input.levels.size()) return std::nan("");
  return spec->input.levels[i].energy;
}

fqed_status fqed_energy_shift(fqed_context* ctx, const fqed_spectrum* spec, const char* level,
                              fqed_energy_shift_terms* out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(spec, "spec");
    need(level, "level");
    need(out, "out");
    const auto t = fqed::energy_shift_terms(spec->input, level, ctx->loop);
    *out = {t.static_term, t.lamb_term, t.width_term, t.total.real(), t.total.imag()};
  });
}

// ---- classical -------------------------------------------------------------

fqed_status fqed_electron_integrate(fqed_context* ctx, const double x[4], const double p[4], const double z_re[4],
                                    const double z_im[4], double tau_span, double dt, size_t sample_every,
                                    fqed_trajectory** out) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(x, "x");
    need(p, "p");
    need(z_re, "z_re");
    need(z_im, "z_im");
    need(out, "out");
    fqed::ElectronState s;
    s.x = four(x);
    s.p = four(p);
    s.z = spinor(z_re, z_im);
    fqed::IntegrationOptions opt{tau_span, dt, sample_every};
    *out = new fqed_trajectory{fqed::integrate_electron(s, nullptr, opt)};
  });
}

void fqed_trajectory_destroy(fqed_trajectory* t) { delete t; }

size_t fqed_trajectory_size(const fqed_trajectory* t) { return t ? t->data.samples.size() : 0; }

int fqed_trajectory_aborted(const fqed_trajectory* t) { return t && t->data.aborted ? 1 : 0; }

const char* fqed_trajectory_reason(const fqed_trajectory* t) { return t ? t->data.reason.c_str() : ""; }

fqed_status fqed_trajectory_sample(const fqed_trajectory* t, size_t i, double row[FQED_TRAJECTORY_COLUMNS]) {
  if (!t || !row || i >= t->data.samples.size()) return FQED_ERR_INVALID_ARGUMENT;
  const auto& s = t->data.samples[i];
  int c = 0;
  row[c++] = s.tau;
  for (int mu = 0; mu < 4; ++mu) row[c++] = s.x[mu];
  for (int mu = 0; mu < 4; ++mu) row[c++] = s.p[mu];
  for (int a = 0; a < 4; ++a) {
    row[c++] = s.z(a).real();
    row[c++] = s.z(a).imag();
  }
  row[c++] = s.zbar_z;
  row[c++] = s.hamiltonian;
  return FQED_OK;
}

fqed_status fqed_trajectory_zitterbewegung(fqed_context* ctx, const fqed_trajectory* t, double* omega) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(t, "trajectory");
    need(omega, "omega");
    const auto& s = t->data.samples;
    if (s.size() < 8) throw fqed::DomainError("zitterbewegung: need at least 8 samples");
    const double step = s[1].tau - s[0].tau;
    std::vector<double> v3;
    for (std::size_t i = 0; i < s.size(); ++i) {
      // the final sample of a run may sit off the sampling grid
      if (i > 0 && std::abs((s[i].tau - s[i - 1].tau) - step) > 1e-9 * step) break;
      v3.push_back(fqed::dirac_current(s[i].z).z);
    }
    *omega = fqed::dominant_frequency(v3, step);
  });
}

fqed_status fqed_exact_free_electron(fqed_context* ctx, const double p[4], const double z_re[4], const double z_im[4],
                                     double tau, double out_re[4], double out_im[4]) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    need(p, "p");
    need(z_re, "z_re");
    need(z_im, "z_im");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const auto z = fqed::exact_free_electron(spinor(z_re, z_im), four(p), tau);
    for (int a = 0; a < 4; ++a) {
      out_re[a] = z(a).real();
      out_im[a] = z(a).imag();
    }
  });
}

fqed_status fqed_selftest(fqed_context* ctx, fqed_selftest_callback cb, void* user, int* all_passed) {
  if (!ctx) return FQED_ERR_INVALID_ARGUMENT;
  return guarded(ctx, [&] {
    bool all = true;
    for (const auto& r : fqed::run_selftest()) {
      all = all && r.passed;
      if (cb) cb(user, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str());
    }
    if (all_passed) *all_passed = all ? 1 : 0;
  });
}

} // extern "C"
