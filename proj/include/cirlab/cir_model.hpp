#pragma once

// The square-root mean-reverting diffusion dX = (b - a X) dt + eps sqrt(X) dB
// on [0, inf): parameters, exact marginal and stationary laws, characteristic
// and moment generating functions, and exact / Euler samplers.

#include "cirlab/distributions.hpp"

#include <vector>

namespace cirlab {

struct CIRParams {
    double a;    // mean-reversion speed, > 0
    double b;    // level parameter, > 0; long-term mean is b/a
    double eps;  // noise intensity, in (0, sqrt(2b)) so the invariant law exists

    CIRParams(double a_, double b_, double eps_);
};

struct DerivedConstants {
    double q_plus_1;   // 2b/eps^2
    double c_inf;      // 2a/eps^2
    double m_eps;      // b/a
    double sigma_eps;  // sqrt(2b)/(2a) * eps
};

DerivedConstants derived_constants(const CIRParams& params);

/// c(t) = (2a/eps^2) / (1 - e^{-at}); strictly decreasing, limit c_inf.
/// Requires t > 0.
double c_eps(const CIRParams& params, double t);

/// Exact law of X_t started at x >= 0, for t > 0: a scaled noncentral
/// chi-square with dof 4b/eps^2, noncentrality 2 c(t) x e^{-at} and scale
/// 1/(2 c(t)).
ScaledNoncentralChiSquare transition_law(const CIRParams& params, double x, double t);

/// transition_law extended to t = 0, where the marginal is the point mass at x.
Law marginal_law(const CIRParams& params, double x, double t);

/// Invariant law Gamma(2b/eps^2, 2a/eps^2).
GammaDist stationary_law(const CIRParams& params);

/// Mean of X_t: x e^{-at} + (b/a)(1 - e^{-at}).
double marginal_mean(const CIRParams& params, double x, double t);

/// Characteristic function E[e^{izX_t}] as (log-modulus, phase).
LogComplex charfn_marginal(const CIRParams& params, double x, double t, double z);

/// log E[e^{z X_t}] for real z < c(t); throws std::domain_error outside the
/// domain of the moment generating function (no clamping).
double log_mgf_marginal(const CIRParams& params, double x, double t, double z);

/// E[e^{z Y_t}] for the normalized variable
/// Y_t = (c_inf X_t - (q+1)) / sqrt(q+1) = (X_t - b/a) / sigma_eps,
/// real z < sqrt(q+1) c(t) / c_inf.
double normalized_mgf(const CIRParams& params, double x, double t, double z);

/// n draws from the exact law of X_t(x); deterministic given the rng state.
std::vector<double> sample_exact(const CIRParams& params, double x, double t, std::size_t n,
                                 Rng& rng);

/// n endpoint values of the full-truncation Euler scheme
/// X_{k+1} = X_k + (b - a max(X_k,0)) dt + eps sqrt(max(X_k,0)) sqrt(dt) N(0,1).
std::vector<double> sample_euler(const CIRParams& params, double x, double t, double dt,
                                 std::size_t n, Rng& rng);

}  // namespace cirlab
