#include "cirlab/cir_model.hpp"

#include "cirlab/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace cirlab {

CIRParams::CIRParams(double a_, double b_, double eps_) : a(a_), b(b_), eps(eps_) {
    if (!(a > 0.0)) throw std::domain_error("CIRParams: requires a > 0");
    if (!(b > 0.0)) throw std::domain_error("CIRParams: requires b > 0");
    if (!(eps > 0.0) || !(eps < std::sqrt(2.0 * b)))
        throw std::domain_error("CIRParams: requires eps in (0, sqrt(2b)) (ergodic regime)");
}

DerivedConstants derived_constants(const CIRParams& p) {
    const double q1 = 2.0 * p.b / (p.eps * p.eps);
    const double c_inf = 2.0 * p.a / (p.eps * p.eps);
    return {q1, c_inf, p.b / p.a, std::sqrt(2.0 * p.b) / (2.0 * p.a) * p.eps};
}

double c_eps(const CIRParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("c_eps: requires t > 0");
    return 2.0 * p.a / (p.eps * p.eps) / (-std::expm1(-p.a * t));
}

ScaledNoncentralChiSquare transition_law(const CIRParams& p, double x, double t) {
    if (!(x >= 0.0)) throw std::domain_error("transition_law: requires x >= 0");
    if (!(t > 0.0)) throw std::domain_error("transition_law: requires t > 0");
    const double c = c_eps(p, t);
    const double dof = 4.0 * p.b / (p.eps * p.eps);
    const double noncentrality = 2.0 * c * x * std::exp(-p.a * t);
    return ScaledNoncentralChiSquare(dof, noncentrality, 1.0 / (2.0 * c));
}

Law marginal_law(const CIRParams& p, double x, double t) {
    if (!(x >= 0.0)) throw std::domain_error("marginal_law: requires x >= 0");
    if (!(t >= 0.0)) throw std::domain_error("marginal_law: requires t >= 0");
    if (t == 0.0) return PointMass{x};
    return transition_law(p, x, t);
}

GammaDist stationary_law(const CIRParams& p) {
    return GammaDist{2.0 * p.b / (p.eps * p.eps), 2.0 * p.a / (p.eps * p.eps)};
}

double marginal_mean(const CIRParams& p, double x, double t) {
    const double decay = std::exp(-p.a * t);
    return x * decay + p.b / p.a * (-std::expm1(-p.a * t));
}

LogComplex charfn_marginal(const CIRParams& p, double x, double t, double z) {
    const double c = c_eps(p, t);
    const double w = z / c;
    const double xdecay = x * std::exp(-p.a * t);
    const double denom = c * c + z * z;
    const double q1 = 2.0 * p.b / (p.eps * p.eps);
    const double log_mod = -0.5 * q1 * std::log1p(w * w) - z * z * c * xdecay / denom;
    const double phase = q1 * std::atan(w) + z * c * c * xdecay / denom;
    return {log_mod, phase};
}

double log_mgf_marginal(const CIRParams& p, double x, double t, double z) {
    const double c = c_eps(p, t);
    if (!(z < c)) throw std::domain_error("log_mgf_marginal: requires z < c_eps(t)");
    const double q1 = 2.0 * p.b / (p.eps * p.eps);
    const double xdecay = x * std::exp(-p.a * t);
    return -q1 * std::log1p(-z / c) + z * c * xdecay / (c - z);
}

double normalized_mgf(const CIRParams& p, double x, double t, double z) {
    const auto d = derived_constants(p);
    const double c = c_eps(p, t);
    const double sq = std::sqrt(d.q_plus_1);
    if (!(z < sq * c / d.c_inf))
        throw std::domain_error("normalized_mgf: z outside the mgf domain");

    // E[e^{zY}] = e^{-z sqrt(q+1)} E[e^{z_x X}], z_x = z c_inf / sqrt(q+1).
    // The leading terms of -(q+1) log(1 - w) and z sqrt(q+1) cancel to O(1);
    // group them as -(q+1)(log1p(-w) + w) - z sqrt(q+1) e^{-at} to keep the
    // difference exact for q+1 ~ 1e6.
    const double zx = z * d.c_inf / sq;
    const double w = zx / c;
    const double xdecay = x * std::exp(-p.a * t);
    const double log_value = -d.q_plus_1 * specfun::detail::log1p_minus_x(-w) -
                             z * sq * std::exp(-p.a * t) + zx * c * xdecay / (c - zx);
    return std::exp(log_value);
}

std::vector<double> sample_exact(const CIRParams& p, double x, double t, std::size_t n,
                                 Rng& rng) {
    const Law law = transition_law(p, x, t);
    return sample(law, n, rng);
}

std::vector<double> sample_euler(const CIRParams& p, double x, double t, double dt,
                                 std::size_t n, Rng& rng) {
    if (!(dt > 0.0) || !(dt <= t)) throw std::domain_error("sample_euler: requires 0 < dt <= t");
    const auto steps = static_cast<std::size_t>(std::llround(std::ceil(t / dt)));
    const double h = t / static_cast<double>(steps);
    const double sqrt_h = std::sqrt(h);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> out(n);
    for (auto& v : out) {
        double state = x;
        for (std::size_t k = 0; k < steps; ++k) {
            const double pos = std::max(state, 0.0);
            state += (p.b - p.a * pos) * h + p.eps * std::sqrt(pos) * sqrt_h * gauss(rng);
        }
        v = state;
    }
    return out;
}

}  // namespace cirlab
