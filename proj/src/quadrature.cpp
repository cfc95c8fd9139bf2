#include "fqed/quadrature.hpp"

#include "fqed/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fqed {

namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace make_workspace(std::size_t n) {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
  Workspace w(gsl_integration_workspace_alloc(n));
  if (!w) throw NumericError("quadrature: workspace allocation failed");
  return w;
}

double trampoline(double x, void* params) {
  const auto& f = *static_cast<const Integrand*>(params);
  return f(x);
}

[[noreturn]] void fail(const char* what, int status, double value, double error) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": " << gsl_strerror(status) << " (value " << value << ", achieved error " << error << ")";
  throw NumericError(os.str());
}

} // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadratureConfig: tolerances must be > 0");
  if (max_intervals < 16) throw DomainError("QuadratureConfig: max_intervals too small");
}

double integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (a == b) return 0.0;
  auto ws = make_workspace(cfg.max_intervals);
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  double value = 0.0;
  double error = 0.0;
  const int status = gsl_integration_qags(&fn, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_intervals, ws.get(), &value, &error);
  if (status != GSL_SUCCESS) fail("integrate", status, value, error);
  if (!std::isfinite(value)) throw NumericError("integrate: non-finite result");
  return value;
}

double integrate_endpoint_smoothed(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  const double width = b - a;
  const Integrand mapped = [&](double u) {
    const double s = std::sin(std::numbers::pi * u / 2.0);
    const double x = a + width * s * s;
    const double jac = width * std::numbers::pi / 2.0 * std::sin(std::numbers::pi * u);
    return jac == 0.0 ? 0.0 : f(x) * jac;
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

double principal_value(const Integrand& f, double a, double b, double pole, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(pole > a && pole < b)) throw DomainError("principal_value: pole must lie strictly inside the interval");
  auto ws = make_workspace(cfg.max_intervals);
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  double value = 0.0;
  double error = 0.0;
  const int status = gsl_integration_qawc(&fn, a, b, pole, cfg.abs_tol, cfg.rel_tol, cfg.max_intervals, ws.get(), &value, &error);
  if (status != GSL_SUCCESS) fail("principal_value", status, value, error);
  return value;
}

} // namespace fqed
