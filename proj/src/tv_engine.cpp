#include "cirlab/tv_engine.hpp"

#include "cirlab/fourier.hpp"
#include "cirlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace cirlab {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

/// Upper bound on the two-sided tail integral of (1 + z^2/b^2)^(-m) beyond L,
/// from (1 + z^2/b^2)^(-m) <= (z/b)^(-2m). Infinite for m <= 1/2.
double tail_power(double b, double m, double L) {
    if (!(m > 0.5)) return kInf;
    const double log_bound =
        std::numbers::ln2_v<double> + 2.0 * m * std::log(b / L) + std::log(L / (2.0 * m - 1.0));
    return std::exp(log_bound);
}

double tail_gauss_l1(double sd, double L) {
    return std::sqrt(2.0 * kPi) / sd * 0.5 * std::erfc(L * sd / std::numbers::sqrt2_v<double>);
}

double tail_gauss_l2(double sd, double L) {
    return std::sqrt(kPi) / sd * 0.5 * std::erfc(L * sd);
}

double measured_tail(const CharFn& cf, double L, bool squared) {
    const auto integrand = [&](double z) {
        const double lm = cf.eval(z).log_modulus;
        return std::exp(squared ? 2.0 * lm : lm);
    };
    quad::QuadratureSettings s;
    s.abs_tol = 1e-14;
    s.rel_tol = 1e-10;
    const double i1 = quad::integrate(integrand, L, 2.0 * L, s).value;
    const double i2 = quad::integrate(integrand, 2.0 * L, 4.0 * L, s).value;
    const double i3 = quad::integrate(integrand, 4.0 * L, 8.0 * L, s).value;
    double remainder = 0.0;
    if (i3 > 1e-18) {
        const double ratio = i3 / std::max(i2, 1e-300);
        if (ratio >= 0.75) return kInf;  // decay too slow to extrapolate
        remainder = i3 * ratio / (1.0 - ratio);
    }
    return 2.0 * (i1 + i2 + i3 + remainder);  // both tails by symmetry of |phi|
}

double tail_mass(const CharFn& cf, double L, bool squared) {
    const auto& bound = squared ? cf.tail_bound_l2 : cf.tail_bound_l1;
    if (bound) return bound(L);
    return measured_tail(cf, L, squared);
}

std::complex<double> eval_cf(const CharFn& cf, double z) {
    const LogComplex v = cf.eval(z);
    return std::polar(std::exp(v.log_modulus), v.phase);
}

/// Density values of both laws on a shared spatial grid of n points covering
/// one alias period P around `center`, from characteristic-function samples
/// on |z| <= L (frequency step dz = 2 pi / P, zero padding beyond L).
struct GridDensities {
    std::vector<double> fa;
    std::vector<double> fb;
    double dx = 0.0;
    double x_origin = 0.0;
    bool bound_respected = true;
};

GridDensities densities_on_grid(const CharFn& a, const CharFn& b, double center, double period,
                                double L, std::size_t n) {
    const double dz = 2.0 * kPi / period;
    const double dx = period / static_cast<double>(n);
    GridDensities out;
    out.dx = dx;
    out.x_origin = center - 0.5 * period;

    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    auto fill = [&](const CharFn& cf) {
        std::vector<std::complex<double>> buf(n, {0.0, 0.0});
        for (std::ptrdiff_t j = -half; j < half; ++j) {
            const double z = (static_cast<double>(j) + 0.5) * dz;
            if (std::abs(z) > L) continue;
            const LogComplex v = cf.eval(z);
            if (cf.log_modulus_bound &&
                v.log_modulus > cf.log_modulus_bound(z) + 1e-12) {
                out.bound_respected = false;
            }
            // shift to the centered law, then carry the e^{iz P/2} grid phase
            const double phase = v.phase - z * center + z * 0.5 * period;
            const std::size_t idx = static_cast<std::size_t>(j >= 0 ? j : j + static_cast<std::ptrdiff_t>(n));
            buf[idx] = std::polar(std::exp(v.log_modulus), phase);
        }
        fourier::dft_inplace(buf);
        std::vector<double> f(n);
        const double scale = dz / (2.0 * kPi);
        for (std::size_t m = 0; m < n; ++m) {
            const double theta = -kPi * static_cast<double>(m) / static_cast<double>(n);
            const std::complex<double> rot(std::cos(theta), std::sin(theta));
            f[m] = scale * (rot * buf[m]).real();
        }
        return f;
    };
    out.fa = fill(a);
    out.fb = fill(b);
    return out;
}

double tv_from_grid(const GridDensities& g) {
    Kahan acc;
    for (std::size_t m = 0; m < g.fa.size(); ++m) acc.add(std::abs(g.fa[m] - g.fb[m]));
    return 0.5 * acc.sum * g.dx;
}

double norm_defect(const std::vector<double>& f, double dx) {
    Kahan acc;
    for (double v : f) acc.add(v);
    return std::abs(acc.sum * dx - 1.0);
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::density_l1: return "density-l1";
        case Method::fourier_l1: return "fourier-l1";
        case Method::parseval_l2: return "parseval-l2";
        case Method::closed_form: return "closed-form";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

CharFn make_charfn(const Law& law) {
    CharFn cf;
    cf.eval = [law](double z) { return charfn(law, z); };
    cf.center = std::holds_alternative<PointMass>(law) ? std::get<PointMass>(law).atom : mean(law);
    cf.spread = std::max(stddev(law), 0.0);
    if (const auto* g = std::get_if<GammaDist>(&law)) {
        const double beta = g->rate, alpha = g->shape;
        cf.tail_bound_l1 = [beta, alpha](double L) { return tail_power(beta, 0.5 * alpha, L); };
        cf.tail_bound_l2 = [beta, alpha](double L) { return tail_power(beta, alpha, L); };
    } else if (const auto* n = std::get_if<GaussianDist>(&law)) {
        const double sd = n->sd;
        cf.tail_bound_l1 = [sd](double L) { return tail_gauss_l1(sd, L); };
        cf.tail_bound_l2 = [sd](double L) { return tail_gauss_l2(sd, L); };
    } else if (const auto* c = std::get_if<ScaledNoncentralChiSquare>(&law)) {
        const double b = 1.0 / (2.0 * c->scale()), k = c->dof();
        cf.tail_bound_l1 = [b, k](double L) { return tail_power(b, 0.25 * k, L); };
        cf.tail_bound_l2 = [b, k](double L) { return tail_power(b, 0.5 * k, L); };
    }
    return cf;
}

CharFn make_charfn_cir(const CIRParams& params, double x, double t) {
    const ScaledNoncentralChiSquare law = transition_law(params, x, t);
    CharFn cf;
    cf.eval = [params, x, t](double z) { return charfn_marginal(params, x, t, z); };
    cf.center = law.mean();
    cf.spread = std::sqrt(law.variance());
    const double c = c_eps(params, t);
    const double q = params.b / (params.eps * params.eps);
    cf.tail_bound_l1 = [c, q](double L) { return tail_power(c, q, L); };
    cf.tail_bound_l2 = [c, q](double L) { return tail_power(c, 2.0 * q, L); };
    cf.log_modulus_bound = [c, q](double z) { return -q * std::log1p(z * z / (c * c)); };
    return cf;
}

DistanceResult tv_density_l1(const Law& a, const Law& b, const quad::QuadratureSettings& settings) {
    if (!absolutely_continuous(a) || !absolutely_continuous(b))
        throw std::invalid_argument("tv_density_l1: degenerate input, use tv_with_atom");

    double lo, hi;
    if (settings.support_window) {
        std::tie(lo, hi) = *settings.support_window;
    } else {
        const auto wa = quad_window(a);
        const auto wb = quad_window(b);
        lo = std::min(wa.first, wb.first);
        hi = std::max(wa.second, wb.second);
    }
    const auto integrand = [&](double y) { return std::abs(pdf(a, y) - pdf(b, y)); };
    const auto r = quad::integrate_checked(integrand, lo, hi, settings);
    const double value = std::max(0.0, 0.5 * r.value);
    return {value, Method::density_l1, 0.5 * r.err_estimate + 1e-13};
}

FourierReport tv_fourier(const CharFn& a, const CharFn& b, const FourierSettings& settings) {
    const double sd_min = std::max(std::min(a.spread, b.spread), 1e-300);
    const double center = 0.5 * (a.center + b.center);
    const double span_half =
        std::max(std::abs(a.center - center) + 14.0 * a.spread,
                 std::abs(b.center - center) + 14.0 * b.spread);
    const double period = 4.0 * std::max(span_half, 1e-12);

    double L = 4.0 / sd_min;
    double tail_a = tail_mass(a, L, false);
    double tail_b = tail_mass(b, L, false);
    for (int i = 0; i < 48 && !(tail_a + tail_b <= settings.tail_tol); ++i) {
        L *= 2.0;
        tail_a = tail_mass(a, L, false);
        tail_b = tail_mass(b, L, false);
    }
    if (!(tail_a + tail_b <= settings.tail_tol))
        throw tail_failure("tv_fourier: characteristic-function tail mass exceeds tolerance");

    const double dz = 2.0 * kPi / period;
    std::size_t n = settings.min_points;
    while (n < settings.max_points &&
           (static_cast<double>(n) < 2.0 * L / dz ||
            static_cast<double>(n) < period * 256.0 / sd_min))
        n <<= 1;
    if (static_cast<double>(n) < 2.0 * L / dz)
        throw tail_failure("tv_fourier: frequency grid exhausted before reaching the cutoff");

    GridDensities g = densities_on_grid(a, b, center, period, L, n);
    double value = tv_from_grid(g);
    double discretization = kInf;
    bool bound_ok = g.bound_respected;
    while (n < settings.max_points) {
        n <<= 1;
        GridDensities g2 = densities_on_grid(a, b, center, period, L, n);
        const double v2 = tv_from_grid(g2);
        discretization = std::abs(v2 - value);
        value = v2;
        bound_ok = bound_ok && g2.bound_respected;
        g = std::move(g2);
        if (discretization <= 0.5 * settings.abs_tol) break;
    }

    FourierReport report;
    report.grid = FourierGrid{n, L, g.x_origin, g.dx};
    report.tail_mass_a = tail_a;
    report.tail_mass_b = tail_b;
    report.modulus_bound_respected = bound_ok;
    const double err = (std::isfinite(discretization) ? discretization : 0.0) +
                       0.5 * (tail_a + tail_b) / (2.0 * kPi) * period +
                       0.5 * (norm_defect(g.fa, g.dx) + norm_defect(g.fb, g.dx));
    report.result = {std::max(0.0, value), Method::fourier_l1, err};
    return report;
}

double l2_fourier_distance(const CharFn& a, const CharFn& b, const FourierSettings& settings) {
    const double sd_min = std::max(std::min(a.spread, b.spread), 1e-300);
    double L = 4.0 / sd_min;
    double tail_a = tail_mass(a, L, true);
    double tail_b = tail_mass(b, L, true);
    for (int i = 0; i < 48 && !(tail_a + tail_b <= settings.tail_tol); ++i) {
        L *= 2.0;
        tail_a = tail_mass(a, L, true);
        tail_b = tail_mass(b, L, true);
    }
    if (!(tail_a + tail_b <= settings.tail_tol))
        throw tail_failure("l2_fourier_distance: L2 tail mass exceeds tolerance");

    const auto integrand = [&](double z) {
        const LogComplex va = a.eval(z);
        const LogComplex vb = b.eval(z);
        const double ma = std::exp(va.log_modulus), mb = std::exp(vb.log_modulus);
        return ma * ma + mb * mb - 2.0 * ma * mb * std::cos(va.phase - vb.phase);
    };
    quad::QuadratureSettings qs;
    qs.abs_tol = 1e-12;
    qs.rel_tol = 1e-10;
    const auto r = quad::integrate(integrand, 0.0, L, qs);
    return std::max(0.0, 2.0 * r.value / (2.0 * kPi));
}

DistanceResult tv_with_atom(const PointMass& point, const Law& law) {
    if (const auto* other = std::get_if<PointMass>(&law))
        return {point.atom == other->atom ? 0.0 : 1.0, Method::closed_form, 0.0};
    return {1.0, Method::closed_form, 0.0};
}

DistanceResult tv_cir(const CIRParams& params, double x, double t,
                      const quad::QuadratureSettings& settings, TvRoute route) {
    if (!(t >= 0.0)) throw std::domain_error("tv_cir: requires t >= 0");
    const Law pi = stationary_law(params);
    if (t == 0.0) return tv_with_atom(PointMass{x}, pi);
    if (route == TvRoute::density) {
        const Law law_t = transition_law(params, x, t);
        return tv_density_l1(law_t, pi, settings);
    }
    FourierSettings fs;
    fs.abs_tol = settings.abs_tol;
    const auto report = tv_fourier(make_charfn_cir(params, x, t), make_charfn(pi), fs);
    return report.result;
}

std::pair<DistanceResult, DistanceResult> tv_cir_cross_check(
    const CIRParams& params, double x, double t, const quad::QuadratureSettings& settings) {
    return {tv_cir(params, x, t, settings, TvRoute::density),
            tv_cir(params, x, t, settings, TvRoute::fourier)};
}

}  // namespace cirlab
