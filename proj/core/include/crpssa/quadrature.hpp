#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace crpssa {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod-minus-Gauss estimate, summed over panels
  std::size_t evaluations = 0;
  bool converged = false;
};

// Globally adaptive 21-point Gauss-Kronrod quadrature over [a, b]. The panel
// with the largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |value|). Integrable endpoint singularities are fine
// because nodes never touch the endpoints.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureOptions& options = {});

// Same, with the initial partition split at the given interior points (kinks,
// discontinuities). Breakpoints outside (a, b) are ignored.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, std::span<const double> breakpoints,
                                    const QuadratureOptions& options = {});

// Throwing wrappers: NumericalError (message carries the achieved estimate)
// when the tolerance is not met within the subdivision budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const QuadratureOptions& options = {});

}  // namespace crpssa
