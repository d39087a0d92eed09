#pragma once

// One-dimensional probability laws: Gamma, Gaussian, scaled noncentral
// chi-square and point mass, with pdf/cdf/quantile/characteristic-function
// evaluation and seedable sampling. Law objects are immutable after
// construction; evaluations are pure and thread-safe.

#include <cstdint>
#include <random>
#include <utility>
#include <variant>
#include <vector>

namespace cirlab {

using Rng = std::mt19937_64;

/// A complex number stored as (log|w|, arg w); exponents like b/eps^2 ~ 1e6
/// would overflow any direct complex representation.
struct LogComplex {
    double log_modulus;
    double phase;
};

struct GammaDist {
    double shape;  // alpha > 0
    double rate;   // beta > 0; mean = shape/rate

    GammaDist(double shape_, double rate_);
};

struct GaussianDist {
    double mean;
    double sd;  // > 0

    GaussianDist(double mean_, double sd_);
};

struct PointMass {
    double atom;
};

/// Law of s * chi'^2_k(lambda): a Poisson(lambda/2) mixture of Gamma laws,
/// evaluated through a mode-centered window of mixture terms kept in log
/// space. The window is extended until the retained Poisson mass reaches
/// 1 - 1e-12; the discarded remainder is exposed for assertion.
class ScaledNoncentralChiSquare {
  public:
    ScaledNoncentralChiSquare(double dof, double noncentrality, double scale);

    double dof() const { return dof_; }
    double noncentrality() const { return noncentrality_; }
    double scale() const { return scale_; }

    double mean() const { return scale_ * (dof_ + noncentrality_); }
    double variance() const { return scale_ * scale_ * (2.0 * dof_ + 4.0 * noncentrality_); }

    /// Poisson mass outside the truncation window (<= 1e-12 by construction).
    double poisson_truncation_mass() const { return truncation_mass_; }

    double pdf(double y) const;
    double cdf(double y) const;

    LogComplex charfn(double z) const;

    double sample_one(Rng& rng) const;

  private:
    double dof_;
    double noncentrality_;
    double scale_;

    // Mixture window: weights_[i] = Poisson(lambda/2) pmf at j_lo_ + i.
    std::int64_t j_lo_ = 0;
    std::vector<double> weights_;
    double truncation_mass_ = 0.0;
};

using Law = std::variant<GammaDist, GaussianDist, ScaledNoncentralChiSquare, PointMass>;

// --- pointwise evaluation ---------------------------------------------------

/// Density. Throws std::domain_error for PointMass (no density exists).
double pdf(const Law& law, double y);

/// Distribution function; right-continuous, a step for PointMass.
double cdf(const Law& law, double y);

/// Generalized inverse of the cdf. Requires u in (0, 1).
double quantile(const Law& law, double u);

/// quantile() with a caller-supplied starting bracket [lo, hi]; used by
/// sweeps that evaluate quantiles at many nearby u values.
double quantile_bracketed(const Law& law, double u, double lo, double hi);

double mean(const Law& law);
double variance(const Law& law);
double stddev(const Law& law);

bool absolutely_continuous(const Law& law);

/// Closed support of the law: [0, inf) for Gamma and the chi-square family,
/// all of R for Gaussian, {atom} for PointMass.
std::pair<double, double> support(const Law& law);

/// Quadrature window [max(lo, mean - 12 sd), mean + 12 sd]; the mass outside
/// is below 1e-13 for every law handled here.
std::pair<double, double> quad_window(const Law& law);

/// Characteristic function E[e^{izX}] as (log-modulus, phase).
LogComplex charfn(const Law& law, double z);

// --- transforms and closed forms ---------------------------------------------

/// Law of c * X for X ~ g, i.e. Gamma{shape, rate/c}. Requires c > 0.
GammaDist gamma_rescale(const GammaDist& g, double c);

/// d_TV((Gamma(alpha,1) - alpha)/sqrt(alpha), N(0,1)) by L1 quadrature of the
/// two densities. Decreasing in alpha with limit 0.
double standardized_gamma_tv_to_gaussian(double alpha);

/// d_TV(m + G, G) for a standard Gaussian G: erf(|m| / (2 sqrt 2)).
double tv_gaussian_shift(double m);

// --- sampling -----------------------------------------------------------------

/// n i.i.d. draws; deterministic given the rng state.
std::vector<double> sample(const Law& law, std::size_t n, Rng& rng);

}  // namespace cirlab
