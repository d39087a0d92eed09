#pragma once

// Total variation distance between absolutely continuous one-dimensional
// laws, by L1 quadrature of densities and by Fourier inversion of
// characteristic functions, plus the Parseval frequency-domain L2 distance.

#include "cirlab/cir_model.hpp"
#include "cirlab/distributions.hpp"
#include "cirlab/quadrature.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cirlab {

enum class Method { density_l1, fourier_l1, parseval_l2, closed_form, monte_carlo };

std::string to_string(Method method);

struct DistanceResult {
    double value = 0.0;
    Method method = Method::density_l1;
    double err_estimate = 0.0;
};

/// Raised when a characteristic function is not integrable enough for the
/// requested frequency grid (e.g. Gamma laws with shape < 1/2).
class tail_failure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A characteristic function packaged with the hints the frequency-domain
/// engines need: where the law lives in space, and bounds controlling how
/// much of |phi| lives beyond a cutoff.
struct CharFn {
    std::function<LogComplex(double)> eval;
    double center = 0.0;
    double spread = 1.0;
    /// integral of |phi| over |z| > L; when absent it is measured numerically
    std::function<double(double)> tail_bound_l1;
    /// integral of |phi|^2 over |z| > L
    std::function<double(double)> tail_bound_l2;
    /// pointwise upper bound on log|phi(z)|, when a closed form exists
    std::function<double(double)> log_modulus_bound;
};

CharFn make_charfn(const Law& law);
CharFn make_charfn_cir(const CIRParams& params, double x, double t);

struct FourierSettings {
    std::size_t min_points = std::size_t{1} << 14;
    std::size_t max_points = std::size_t{1} << 20;
    double tail_tol = 1e-10;
    double abs_tol = 1e-8;
};

struct FourierGrid {
    std::size_t n_points = 0;
    double freq_cutoff = 0.0;    // phi sampled on |z| <= freq_cutoff
    double spatial_origin = 0.0;
    double spatial_step = 0.0;
};

struct FourierReport {
    DistanceResult result;
    FourierGrid grid;
    double tail_mass_a = 0.0;
    double tail_mass_b = 0.0;
    /// false if a supplied log_modulus_bound was violated anywhere on the grid
    bool modulus_bound_respected = true;
};

/// TV = (1/2) integral |f - g| over the union support window.
/// Throws std::invalid_argument for PointMass inputs (use tv_with_atom).
DistanceResult tv_density_l1(const Law& a, const Law& b,
                             const quad::QuadratureSettings& settings = {});

/// TV by inverting both characteristic functions to densities on a shared
/// grid. Throws tail_failure when the tail condition cannot be met.
FourierReport tv_fourier(const CharFn& a, const CharFn& b, const FourierSettings& settings = {});

/// integral (f - g)^2 computed entirely in the frequency domain,
/// = (1/2pi) integral |phi_a - phi_b|^2.
double l2_fourier_distance(const CharFn& a, const CharFn& b,
                           const FourierSettings& settings = {});

/// TV between a point mass and another law: 1 unless the other law is the
/// same point mass.
DistanceResult tv_with_atom(const PointMass& point, const Law& law);

enum class TvRoute { density, fourier };

/// d_TV(X_t(x), stationary law); t = 0 resolves to the atom case.
DistanceResult tv_cir(const CIRParams& params, double x, double t,
                      const quad::QuadratureSettings& settings = {},
                      TvRoute route = TvRoute::density);

/// Both routes side by side (density first), for cross-checking.
std::pair<DistanceResult, DistanceResult> tv_cir_cross_check(
    const CIRParams& params, double x, double t, const quad::QuadratureSettings& settings = {});

}  // namespace cirlab
