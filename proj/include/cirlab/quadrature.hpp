#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace cirlab::quad {

struct QuadratureSettings {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = 4096;
    // Explicit integration window; when absent, callers derive one from the laws.
    std::optional<std::pair<double, double>> support_window;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

/// Raised when an adaptive rule cannot meet the requested tolerance.
class quadrature_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod 15-point quadrature of f over [lo, hi].
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadratureSettings& settings = {});

/// Same, but throws quadrature_error if the error estimate exceeds the tolerance.
QuadResult integrate_checked(const std::function<double(double)>& f, double lo, double hi,
                             const QuadratureSettings& settings = {});

/// tanh-sinh quadrature of f over (0, 1); robust to integrable endpoint
/// singularities such as quantile blow-up at u -> 0, 1.
QuadResult integrate_unit_endpoints(const std::function<double(double)>& f, double tol = 1e-9);

}  // namespace cirlab::quad
