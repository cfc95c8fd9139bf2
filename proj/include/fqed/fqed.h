/* C interface to the fqed engine. Every call returns an fqed_status; on
 * failure the context (where one is passed) holds a message until the next
 * call on it. Contexts are not shared between threads. Angles are radians and
 * energies are in the units of the configured mass. */
#ifndef FQED_FQED_H
#define FQED_FQED_H

#include <stddef.h>

#if defined(_WIN32)
#define FQED_API __declspec(dllexport)
#else
#define FQED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FQED_OK = 0,
  FQED_ERR_DOMAIN = 1,           /* bad kinematics or input values */
  FQED_ERR_NUMERIC = 2,          /* quadrature or integrator failure */
  FQED_ERR_POLE = 3,             /* propagator evaluated on its pole */
  FQED_ERR_INVALID_ARGUMENT = 4, /* null pointers, bad enum values, short buffers */
  FQED_ERR_IO = 5,
  FQED_ERR_INTERNAL = 6
} fqed_status;

typedef enum {
  FQED_COMPTON = 0,
  FQED_BREMSSTRAHLUNG = 1,
  FQED_PAIR_ANNIHILATION = 2,
  FQED_PAIR_PRODUCTION = 3,
  FQED_ELECTRON_ELECTRON = 4,
  FQED_ELECTRON_POSITRON = 5
} fqed_process;

typedef struct fqed_context fqed_context;
typedef struct fqed_spectrum fqed_spectrum;
typedef struct fqed_trajectory fqed_trajectory;

FQED_API const char* fqed_version(void);
FQED_API const char* fqed_status_string(fqed_status status);

FQED_API fqed_status fqed_context_create(fqed_context** out);
FQED_API void fqed_context_destroy(fqed_context* ctx);
/* Empty string when the last call succeeded. */
FQED_API const char* fqed_context_last_error(const fqed_context* ctx);
FQED_API fqed_status fqed_context_set_mass(fqed_context* ctx, double mass);
FQED_API fqed_status fqed_context_set_alpha(fqed_context* ctx, double alpha);
FQED_API fqed_status fqed_context_set_quadrature(fqed_context* ctx, double abs_tol, double rel_tol, size_t max_intervals);
FQED_API double fqed_context_mass(const fqed_context* ctx);
FQED_API double fqed_context_alpha(const fqed_context* ctx);

/* Shortest round-trip decimal; "nan", "inf", "-inf". Needs len >= 32. */
FQED_API fqed_status fqed_format_double(double v, char* buf, size_t len);

/* ---- tree-level processes ---------------------------------------------- */

#define FQED_MAX_LEGS 4

typedef struct {
  int n_legs;
  /* legs in fixed process order, (E, px, py, pz):
   *   compton:           p_i, k_i, p_f, k_f
   *   bremsstrahlung:    p_i, p_f, k_f
   *   pair annihilation: p_minus, p_plus, k_i, k_f
   *   pair production:   k_i, p_plus, p_minus
   *   electron-electron: p_i1, p_i2, p_f1, p_f2
   *   electron-positron: p_i_minus, p_i_plus, p_f_minus, p_f_plus */
  double momenta[FQED_MAX_LEGS][4];
  double m2_spin_avg;   /* initial-state averaged sum of |M|^2, couplings included */
  double dsigma_domega; /* NaN for bremsstrahlung and pair production */
} fqed_process_result;

FQED_API fqed_status fqed_compton_lab(fqed_context* ctx, double omega_in, double theta, double phi, fqed_process_result* out);
FQED_API fqed_status fqed_annihilation_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out);
FQED_API fqed_status fqed_moller_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out);
FQED_API fqed_status fqed_bhabha_cm(fqed_context* ctx, double energy, double theta, fqed_process_result* out);
FQED_API fqed_status fqed_bremsstrahlung(fqed_context* ctx, double energy_in, double omega, double theta_k, double theta_e,
                                         double phi_e, double Z, fqed_process_result* out);
FQED_API fqed_status fqed_pair_production(fqed_context* ctx, double omega, double energy_plus, double theta_plus,
                                          double theta_minus, double phi_minus, double Z, fqed_process_result* out);

/* Reduced amplitude for explicit legs (process order as above). spins: 0 = up,
 * 1 = down along z for fermion legs; helicities: 0 = +, 1 = - for photon legs;
 * entries for the other species are ignored. The printed prefactor is written
 * to ledger (may be NULL). */
FQED_API fqed_status fqed_amplitude(fqed_context* ctx, fqed_process process, const double momenta[][4], int n_legs,
                                    const int* spins, const int* helicities, double Z, double* re, double* im,
                                    char* ledger, size_t ledger_len);

/* ---- loops ------------------------------------------------------------- */

typedef struct {
  double pole_re, pole_im;
  double finite_re, finite_im;
} fqed_laurent;

FQED_API fqed_status fqed_vacuum_polarization(fqed_context* ctx, double k2, double* re, double* im);
FQED_API fqed_status fqed_vacuum_polarization_pole(fqed_context* ctx, fqed_laurent* out);
FQED_API fqed_status fqed_positronium_check(fqed_context* ctx, double* re, double* im);
/* Omega = scalar * m + slash * pslash */
FQED_API fqed_status fqed_self_energy(fqed_context* ctx, double p2, fqed_laurent* scalar, fqed_laurent* slash);

FQED_API fqed_status fqed_spectrum_load(fqed_context* ctx, const char* path, fqed_spectrum** out);
FQED_API fqed_status fqed_spectrum_parse(fqed_context* ctx, const char* text, fqed_spectrum** out);
FQED_API void fqed_spectrum_destroy(fqed_spectrum* spec);
FQED_API size_t fqed_spectrum_level_count(const fqed_spectrum* spec);
FQED_API const char* fqed_spectrum_level_label(const fqed_spectrum* spec, size_t i);
FQED_API double fqed_spectrum_level_energy(const fqed_spectrum* spec, size_t i);

typedef struct {
  double static_term;
  double lamb_term;
  double width_term;
  double total_re, total_im;
} fqed_energy_shift_terms;

FQED_API fqed_status fqed_energy_shift(fqed_context* ctx, const fqed_spectrum* spec, const char* level,
                                       fqed_energy_shift_terms* out);

/* ---- classical dynamics ------------------------------------------------ */

#define FQED_TRAJECTORY_COLUMNS 19 /* tau, x0..x3, p0..p3, re/im z0..z3, zbar_z, H */

FQED_API fqed_status fqed_electron_integrate(fqed_context* ctx, const double x[4], const double p[4], const double z_re[4],
                                             const double z_im[4], double tau_span, double dt, size_t sample_every,
                                             fqed_trajectory** out);
FQED_API void fqed_trajectory_destroy(fqed_trajectory* t);
FQED_API size_t fqed_trajectory_size(const fqed_trajectory* t);
/* 1 when a non-finite state stopped the run; the samples end before it. */
FQED_API int fqed_trajectory_aborted(const fqed_trajectory* t);
FQED_API const char* fqed_trajectory_reason(const fqed_trajectory* t);
FQED_API fqed_status fqed_trajectory_sample(const fqed_trajectory* t, size_t i, double row[FQED_TRAJECTORY_COLUMNS]);
/* Angular frequency of the strongest line in z-bar gamma^3 z. */
FQED_API fqed_status fqed_trajectory_zitterbewegung(fqed_context* ctx, const fqed_trajectory* t, double* omega);

FQED_API fqed_status fqed_exact_free_electron(fqed_context* ctx, const double p[4], const double z_re[4],
                                              const double z_im[4], double tau, double out_re[4], double out_im[4]);

/* ---- self test --------------------------------------------------------- */

typedef void (*fqed_selftest_callback)(void* user, const char* name, int passed, const char* detail);

FQED_API fqed_status fqed_selftest(fqed_context* ctx, fqed_selftest_callback cb, void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* FQED_FQED_H */
