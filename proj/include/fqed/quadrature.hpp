#pragma once

#include <cstddef>
#include <functional>

namespace fqed {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 4000;

  void validate() const;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss–Kronrod with singularity extrapolation over [a, b].
/// Throws NumericError (with the achieved error estimate) on non-convergence.
double integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Same, after the substitution x = a + (b - a) sin²(πu/2), which flattens
/// integrable logarithmic behaviour at both endpoints.
double integrate_endpoint_smoothed(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Cauchy principal value P∫_a^b f(x)/(x - pole) dx, pole strictly inside (a, b).
double principal_value(const Integrand& f, double a, double b, double pole, const QuadratureConfig& cfg = {});

} // namespace fqed
