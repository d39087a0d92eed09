#include "cirlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace cirlab::quad {

namespace {

// boost's adaptive GK splits recursively; depth d allows 2^d panels.
std::size_t depth_for(std::size_t max_subdivisions) {
    std::size_t depth = 1;
    while ((std::size_t{1} << depth) < max_subdivisions && depth < 20) ++depth;
    return depth;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadratureSettings& settings) {
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    const double tol = std::max(settings.rel_tol, 1e-14);
    const double value = rule::integrate(f, lo, hi, depth_for(settings.max_subdivisions), tol, &err);
    return {value, err};
}

QuadResult integrate_checked(const std::function<double(double)>& f, double lo, double hi,
                             const QuadratureSettings& settings) {
    QuadResult r = integrate(f, lo, hi, settings);
    const double budget = settings.abs_tol + settings.rel_tol * std::abs(r.value);
    if (!(r.err_estimate <= std::max(budget, 1e-13))) {
        throw quadrature_error("adaptive quadrature failed to reach tolerance: err=" +
                               std::to_string(r.err_estimate));
    }
    return r;
}

QuadResult integrate_unit_endpoints(const std::function<double(double)>& f, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator(12);
    double err = 0.0, l1 = 0.0;
    const double value = integrator.integrate(f, 0.0, 1.0, tol, &err, &l1);
    // boost reports a relative error estimate; convert to absolute.
    return {value, std::abs(err) * std::max(l1, 1.0)};
}

}  // namespace cirlab::quad
