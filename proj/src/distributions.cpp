#include "cirlab/distributions.hpp"

#include "cirlab/quadrature.hpp"
#include "cirlab/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cirlab {

namespace {

constexpr double kLn2 = std::numbers::ln2_v<double>;
constexpr double kLnSqrtTwoPi = 0.91893853320467274178;
constexpr double kSqrt2 = std::numbers::sqrt2_v<double>;
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

double gaussian_pdf(double mean, double sd, double y) {
    const double u = (y - mean) / sd;
    return std::exp(-0.5 * u * u - kLnSqrtTwoPi) / sd;
}

double gaussian_cdf(double mean, double sd, double y) {
    return 0.5 * std::erfc(-(y - mean) / (sd * kSqrt2));
}

double gamma_log_pdf(const GammaDist& g, double y) {
    // log f = log_gamma_term(shape-1, rate*y) + log(rate)
    return specfun::detail::log_gamma_term(g.shape - 1.0, g.rate * y) + std::log(g.rate);
}

}  // namespace

GammaDist::GammaDist(double shape_, double rate_) : shape(shape_), rate(rate_) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::domain_error("GammaDist: requires shape > 0 and rate > 0");
}

GaussianDist::GaussianDist(double mean_, double sd_) : mean(mean_), sd(sd_) {
    if (!(sd > 0.0)) throw std::domain_error("GaussianDist: requires sd > 0");
}

// --- ScaledNoncentralChiSquare ------------------------------------------------

ScaledNoncentralChiSquare::ScaledNoncentralChiSquare(double dof, double noncentrality, double scale)
    : dof_(dof), noncentrality_(noncentrality), scale_(scale) {
    if (!(dof > 0.0)) throw std::domain_error("ScaledNoncentralChiSquare: requires dof > 0");
    if (!(noncentrality >= 0.0))
        throw std::domain_error("ScaledNoncentralChiSquare: requires noncentrality >= 0");
    if (!(scale > 0.0)) throw std::domain_error("ScaledNoncentralChiSquare: requires scale > 0");

    const double m = 0.5 * noncentrality_;
    if (m == 0.0) {
        j_lo_ = 0;
        weights_ = {1.0};
        truncation_mass_ = 0.0;
        return;
    }

    double width = 12.5 * std::sqrt(m) + 20.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        j_lo_ = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(m - width)));
        const auto j_hi = static_cast<std::int64_t>(std::ceil(m + width));
        const auto j_mode = std::clamp(static_cast<std::int64_t>(m), j_lo_, j_hi);

        weights_.assign(static_cast<std::size_t>(j_hi - j_lo_ + 1), 0.0);
        const std::size_t i_mode = static_cast<std::size_t>(j_mode - j_lo_);
        weights_[i_mode] = std::exp(specfun::log_poisson_pmf(static_cast<double>(j_mode), m));
        for (std::size_t i = i_mode; i + 1 < weights_.size(); ++i) {
            const double j = static_cast<double>(j_lo_) + static_cast<double>(i);
            weights_[i + 1] = weights_[i] * m / (j + 1.0);
        }
        for (std::size_t i = i_mode; i > 0; --i) {
            const double j = static_cast<double>(j_lo_) + static_cast<double>(i);
            weights_[i - 1] = weights_[i] * j / m;
        }

        Kahan total;
        for (double w : weights_) total.add(w);
        truncation_mass_ = std::max(0.0, 1.0 - total.sum);
        if (truncation_mass_ <= 1e-12) return;
        width *= 1.4;
    }
    throw std::runtime_error("ScaledNoncentralChiSquare: Poisson window did not capture 1 - 1e-12");
}

double ScaledNoncentralChiSquare::pdf(double y) const {
    if (!(y > 0.0)) return 0.0;
    const double w = y / scale_;
    const double x = 0.5 * w;
    const double half = 0.5 * dof_;

    // Mixture terms t(a) = x^(a-1') ... peak near shape a ~ x; anchor there and
    // sweep outward so the anchor never underflows while interior terms matter.
    const auto j_hi = j_lo_ + static_cast<std::int64_t>(weights_.size()) - 1;
    const auto j_star =
        std::clamp(static_cast<std::int64_t>(std::llround(x - half)), j_lo_, j_hi);
    const std::size_t i_star = static_cast<std::size_t>(j_star - j_lo_);
    const double a_star = half + static_cast<double>(j_star);

    const double lt_star = specfun::detail::log_gamma_term(a_star - 1.0, x) - kLn2;
    const double t_star = std::exp(lt_star);
    if (t_star == 0.0) return 0.0;

    Kahan acc;
    double t = t_star;
    for (std::size_t i = i_star;; ++i) {
        acc.add(weights_[i] * t);
        if (i + 1 >= weights_.size() || t < 1e-300) break;
        const double a = half + static_cast<double>(j_lo_) + static_cast<double>(i);
        t *= x / a;
    }
    t = t_star;
    for (std::size_t i = i_star; i > 0; --i) {
        const double a = half + static_cast<double>(j_lo_) + static_cast<double>(i);
        t *= (a - 1.0) / x;
        if (t < 1e-300) break;
        acc.add(weights_[i - 1] * t);
    }
    return acc.sum / (2.0 * scale_);  // d/dy [F_W(y/s)] with W-space x = w/2
}

double ScaledNoncentralChiSquare::cdf(double y) const {
    if (!(y > 0.0)) return 0.0;
    const double x = 0.5 * y / scale_;
    const double half = 0.5 * dof_;
    const double a0 = half + static_cast<double>(j_lo_);

    // P(a+1, x) = P(a, x) - u(a), u(a) = x^a e^-x / Gamma(a+1); one anchored
    // incomplete-gamma evaluation, then a compensated recurrence across the window.
    double p = boost::math::gamma_p(a0, x);
    double p_comp = 0.0;
    double u = std::exp(specfun::detail::log_gamma_term(a0, x));

    Kahan acc;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc.add(weights_[i] * p);
        const double a = a0 + static_cast<double>(i);
        const double y1 = -u - p_comp;
        const double t1 = p + y1;
        p_comp = (t1 - p) - y1;
        p = t1;
        if (p < 0.0) p = 0.0, p_comp = 0.0;
        u *= x / (a + 1.0);
    }
    return std::clamp(acc.sum, 0.0, 1.0);
}

LogComplex ScaledNoncentralChiSquare::charfn(double z) const {
    const double sz = scale_ * z;
    const double denom = 1.0 + 4.0 * sz * sz;
    const double log_mod = -0.25 * dof_ * std::log1p(4.0 * sz * sz) -
                           2.0 * noncentrality_ * sz * sz / denom;
    const double phase = 0.5 * dof_ * std::atan(2.0 * sz) + noncentrality_ * sz / denom;
    return {log_mod, phase};
}

double ScaledNoncentralChiSquare::sample_one(Rng& rng) const {
    std::int64_t j = 0;
    if (noncentrality_ > 0.0) {
        std::poisson_distribution<std::int64_t> pois(0.5 * noncentrality_);
        j = pois(rng);
    }
    std::gamma_distribution<double> gamma(0.5 * dof_ + static_cast<double>(j), 2.0);
    return scale_ * gamma(rng);
}

// --- variant dispatch -----------------------------------------------------------

double pdf(const Law& law, double y) {
    return std::visit(
        [y](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                if (!(y > 0.0)) return 0.0;
                return std::exp(gamma_log_pdf(l, y));
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                return gaussian_pdf(l.mean, l.sd, y);
            } else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>) {
                return l.pdf(y);
            } else {
                throw std::domain_error("pdf: undefined for PointMass");
            }
        },
        law);
}

double cdf(const Law& law, double y) {
    return std::visit(
        [y](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                if (!(y > 0.0)) return 0.0;
                return boost::math::gamma_p(l.shape, l.rate * y);
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                return gaussian_cdf(l.mean, l.sd, y);
            } else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>) {
                return l.cdf(y);
            } else {
                return y >= l.atom ? 1.0 : 0.0;
            }
        },
        law);
}

namespace {

double quantile_by_bisection(const Law& law, double u, double lo, double hi) {
    const auto [sup_lo, sup_hi] = support(law);
    lo = std::max(lo, sup_lo);
    hi = std::min(hi, sup_hi);

    const double sd = stddev(law);
    double step = std::max(sd, 1e-6 * (std::abs(lo) + std::abs(hi) + 1.0));
    for (int i = 0; i < 200 && cdf(law, hi) < u; ++i) {
        hi += step;
        step *= 1.6;
    }
    step = std::max(sd, 1e-6 * (std::abs(lo) + std::abs(hi) + 1.0));
    for (int i = 0; i < 200 && lo > sup_lo && cdf(law, lo) > u; ++i) {
        lo = std::max(sup_lo, lo - step);
        step *= 1.6;
    }

    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 160; ++i) {
        mid = 0.5 * (lo + hi);
        const double f = cdf(law, mid);
        if (std::abs(f - u) <= 1e-12) break;
        if (f < u)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    }
    // two Newton polish steps
    double x = mid;
    for (int i = 0; i < 2; ++i) {
        const double dens = pdf(law, x);
        if (!(dens > 1e-300)) break;
        x = std::clamp(x - (cdf(law, x) - u) / dens, lo, hi);
    }
    return x;
}

}  // namespace

double quantile(const Law& law, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: requires u in (0, 1)");
    return std::visit(
        [&, u](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                return boost::math::gamma_p_inv(l.shape, u) / l.rate;
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                return l.mean + l.sd * kSqrt2 * specfun::erf_inv(2.0 * u - 1.0);
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return l.atom;
            } else {
                const auto [lo, hi] = quad_window(law);
                return quantile_by_bisection(law, u, lo, hi);
            }
        },
        law);
}

double quantile_bracketed(const Law& law, double u, double lo, double hi) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: requires u in (0, 1)");
    if (std::holds_alternative<ScaledNoncentralChiSquare>(law))
        return quantile_by_bisection(law, u, lo, hi);
    return quantile(law, u);
}

double mean(const Law& law) {
    return std::visit(
        [](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>)
                return l.shape / l.rate;
            else if constexpr (std::is_same_v<T, GaussianDist>)
                return l.mean;
            else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>)
                return l.mean();
            else
                return l.atom;
        },
        law);
}

double variance(const Law& law) {
    return std::visit(
        [](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>)
                return l.shape / (l.rate * l.rate);
            else if constexpr (std::is_same_v<T, GaussianDist>)
                return l.sd * l.sd;
            else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>)
                return l.variance();
            else
                return 0.0;
        },
        law);
}

double stddev(const Law& law) { return std::sqrt(variance(law)); }

bool absolutely_continuous(const Law& law) {
    return !std::holds_alternative<PointMass>(law);
}

std::pair<double, double> support(const Law& law) {
    return std::visit(
        [](const auto& l) -> std::pair<double, double> {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GaussianDist>)
                return {-kInf, kInf};
            else if constexpr (std::is_same_v<T, PointMass>)
                return {l.atom, l.atom};
            else {
                (void)l;
                return {0.0, kInf};
            }
        },
        law);
}

std::pair<double, double> quad_window(const Law& law) {
    if (const auto* pm = std::get_if<PointMass>(&law)) return {pm->atom, pm->atom};
    const double m = mean(law);
    const double sd = stddev(law);
    const auto [lo, hi] = support(law);
    return {std::max(lo, m - 12.0 * sd), std::min(hi, m + 12.0 * sd)};
}

LogComplex charfn(const Law& law, double z) {
    return std::visit(
        [z](const auto& l) -> LogComplex {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                const double w = z / l.rate;
                return {-0.5 * l.shape * std::log1p(w * w), l.shape * std::atan(w)};
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                return {-0.5 * z * z * l.sd * l.sd, l.mean * z};
            } else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>) {
                return l.charfn(z);
            } else {
                return {0.0, l.atom * z};
            }
        },
        law);
}

GammaDist gamma_rescale(const GammaDist& g, double c) {
    if (!(c > 0.0)) throw std::domain_error("gamma_rescale: requires c > 0");
    return GammaDist{g.shape, g.rate / c};
}

double standardized_gamma_tv_to_gaussian(double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("standardized_gamma_tv_to_gaussian: requires alpha > 0");

    const double sqrt_alpha = std::sqrt(alpha);
    const auto log_density = [&](double z) -> double {
        // density of (Gamma(alpha,1) - alpha)/sqrt(alpha) at z > -sqrt(alpha)
        if (alpha < 30.0) {
            const double arg = sqrt_alpha * z + alpha;
            return 0.5 * std::log(alpha) - std::lgamma(alpha) + (alpha - 1.0) * std::log(arg) -
                   sqrt_alpha * z - alpha;
        }
        const double w = z / sqrt_alpha;
        return -kLnSqrtTwoPi - specfun::detail::stirling_remainder(alpha) +
               alpha * specfun::detail::log1p_minus_x(w) - std::log1p(w);
    };

    const double window = 13.0;
    const auto integrand = [&](double z) {
        const double phi = std::exp(-0.5 * z * z - kLnSqrtTwoPi);
        const double g = (z > -sqrt_alpha) ? std::exp(log_density(z)) : 0.0;
        return std::abs(g - phi);
    };
    quad::QuadratureSettings settings;
    settings.abs_tol = 1e-10;
    settings.rel_tol = 1e-10;
    const auto r = quad::integrate_checked(integrand, -window, window, settings);
    return std::clamp(0.5 * r.value, 0.0, 1.0);
}

double tv_gaussian_shift(double m) {
    return specfun::erf(std::abs(m) / (2.0 * kSqrt2));
}

std::vector<double> sample(const Law& law, std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    std::visit(
        [&](const auto& l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaDist>) {
                std::gamma_distribution<double> dist(l.shape, 1.0 / l.rate);
                for (auto& v : out) v = dist(rng);
            } else if constexpr (std::is_same_v<T, GaussianDist>) {
                std::normal_distribution<double> dist(l.mean, l.sd);
                for (auto& v : out) v = dist(rng);
            } else if constexpr (std::is_same_v<T, ScaledNoncentralChiSquare>) {
                for (auto& v : out) v = l.sample_one(rng);
            } else {
                std::fill(out.begin(), out.end(), l.atom);
            }
        },
        law);
    return out;
}

}  // namespace cirlab
