#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// The oracles use only gamma matrices, slash and trace_product; no spinors.

#include "fqed/loops.hpp"
#include "fqed/processes.hpp"

#include <random>
#include <vector>

namespace fqed::test {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b);
Vector3 random_unit(Rng& rng);
FourVector random_four_vector(Rng& rng, double scale = 3.0);
FourVector random_on_shell(Rng& rng, double mass = 1.0, double pmax = 3.0);
FourVector lightlike(double omega, const Vector3& n);
/// Pure boost with velocity β⃗ (|β| < 1).
FourVector boost(const FourVector& v, const Vector3& beta);

// Random configurations in generic frames, spins up and helicities plus.
KinematicConfig random_compton(Rng& rng, double mass = 1.0);
KinematicConfig random_annihilation(Rng& rng, double mass = 1.0);
KinematicConfig random_moller(Rng& rng, double mass = 1.0);
KinematicConfig random_bhabha(Rng& rng, double mass = 1.0);
KinematicConfig random_bremsstrahlung(Rng& rng, double mass = 1.0);
KinematicConfig random_pair_production(Rng& rng, double mass = 1.0);
KinematicConfig random_config(Rng& rng, ProcessId id, double mass = 1.0);

/// Randomize spin and helicity labels of every leg.
void randomize_labels(Rng& rng, KinematicConfig& cfg);

// Initial-state averaged Σ|M|² from Dirac traces with -g polarization sums,
// ūu = 2m normalization, couplings e = √(4πα) and Z included.
double compton_trace(const KinematicConfig& cfg, double alpha);
double annihilation_trace(const KinematicConfig& cfg, double alpha);
double bremsstrahlung_trace(const KinematicConfig& cfg, double alpha);
/// Pair production sums the photon polarization with δ^{ij} - k̂^i k̂^j: the
/// v̄(p₊)…u(p₋) ordering is not transverse, so -g does not apply.
double pair_production_trace(const KinematicConfig& cfg, double alpha);
/// Textbook ū(p₋)…v(p₊) ordering and propagators, with -g or the transverse sum.
double pair_production_trace_standard(const KinematicConfig& cfg, double alpha, bool transverse = false);
double moller_trace(const KinematicConfig& cfg, double alpha);
double bhabha_trace(const KinematicConfig& cfg, double alpha);
double trace_oracle(const KinematicConfig& cfg, double alpha);

/// Spin-averaged Klein–Nishina |M̄|² in invariant form.
double klein_nishina(const KinematicConfig& cfg, double alpha);
/// Spin-averaged e⁺e⁻ → γγ |M̄|², the crossed Klein–Nishina form.
double annihilation_closed_form(const KinematicConfig& cfg, double alpha);

double relative_difference(double a, double b);

/// -C(π/2)∫ k g(k) δ_σ(k - Δ) dk with a Gaussian δ_σ on a dense Simpson grid,
/// Richardson-extrapolated in σ² (exact for integrands up to cubic in k).
/// C = -4α; g(k) = J(k)·J(k).
double width_oracle(const TransitionCurrent& j, double delta, double alpha);

/// Gauss–Legendre rule on [a, b] from the Golub–Welsch eigenproblem.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);
template <class F>
double apply_rule(const GaussRule& g, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
  return s;
}

} // namespace fqed::test
