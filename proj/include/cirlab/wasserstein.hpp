#pragma once

// Wasserstein distance of order p > 0 between one-dimensional laws: the
// quantile-coupling identity for p >= 1, and an exact small-instance
// transportation solver for all p. Outer exponent is 1 ^ (1/p) throughout.

#include "cirlab/cir_model.hpp"
#include "cirlab/distributions.hpp"
#include "cirlab/quadrature.hpp"
#include "cirlab/tv_engine.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace cirlab {

struct DiscreteMeasure {
    std::vector<std::pair<double, double>> atoms;  // (location, mass); masses sum to 1
};

/// W_p via (integral_0^1 |Qa(u) - Qb(u)|^p du)^(1/p). Requires p >= 1.
DistanceResult wp_quantile(const Law& a, const Law& b, double p,
                           const quad::QuadratureSettings& settings = {});

/// Same, on raw quantile functions (used by invariance checks that shift or
/// rescale a law without leaving the quantile representation).
DistanceResult wp_quantile_fn(const std::function<double(double)>& qa,
                              const std::function<double(double)>& qb, double p,
                              const quad::QuadratureSettings& settings = {});

/// Exact optimal-transport value between discrete measures (atom counts
/// <= 512 each) by successive-shortest-path min-cost flow on the
/// transportation graph. Returns cost^(1 ^ 1/p).
double wp_discrete_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// Cost of the sorted (monotone) coupling, same outer exponent; optimal for
/// p >= 1 and an upper bound otherwise.
double monotone_coupling_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

struct BoundInterval {
    double lower;
    double upper;
    double estimate;  // discrete-OT point estimate on a 512-atom discretization
};

/// W_p(m + G, G) for standard Gaussian G: exactly |m| when p >= 1; for
/// p in (0,1) only the bounds max(|m|^p - 2 E|G|^p, 0) <= . <= |m|^p are
/// available, returned with a numeric estimate.
std::variant<double, BoundInterval> wp_gaussian_shift(double m, double p);

struct WpCirResult {
    DistanceResult raw;
    double renormalized;  // raw / eps^(1 ^ p)
};

/// W_p(X_t(x), stationary law) for p >= 1; t = 0 couples the point mass at x.
WpCirResult wp_cir(const CIRParams& params, double x, double t, double p,
                   const quad::QuadratureSettings& settings = {});

/// n equal-mass atoms at the quantiles u_i = (i - 1/2)/n.
DiscreteMeasure quantile_discretization(const Law& law, std::size_t n);

}  // namespace cirlab
