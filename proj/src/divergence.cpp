#include "ebucb/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ebucb/quadrature.hpp"

namespace ebucb {

namespace {

constexpr double kDelta = 1e-10;      // integration truncation (x space)
// The quantile representation integrates over u = F1(x); heavy-tailed density
// ratios leave polynomially-decaying mass near u = 0,1, so its truncation has
// to sit much closer to the endpoints to hit the dual-representation tolerance.
constexpr double kDeltaQuantile = 1e-13;
constexpr double kBlowup = 1e12;      // raw-integral saturation threshold

void check_support(const UnivariateDistribution& d) {
    for (double x : {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
        const double v = d.pdf(x);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(
                "divergence: distribution density must be positive on (0,1)");
        }
    }
}

std::vector<double> combined_breakpoints(const UnivariateDistribution& p1,
                                         const UnivariateDistribution& p2) {
    auto pts = p1.density_breakpoints();
    for (double b : p2.density_breakpoints()) pts.push_back(b);
    return pts;
}

// Integrates f over [delta, 1-delta] plus two narrowing collars, and decides
// whether the integral diverges as the truncation shrinks 1e-10 -> 1e-12.
struct TruncatedIntegral {
    double value;      // at delta = 1e-10
    double abs_error;
    bool infinite;
};

TruncatedIntegral truncated_integral(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints,
                                     double tol, double delta = kDelta) {
    const auto core = integrate_split(f, delta, 1.0 - delta, breakpoints, tol);
    TruncatedIntegral out{core.value, core.abs_error, false};
    if (!std::isfinite(core.value) || std::fabs(core.value) > kBlowup) {
        out.infinite = true;
        return out;
    }
    // Collar growth test: a divergent endpoint keeps contributing mass at a
    // non-decaying rate per decade of truncation.
    const double collar_tol = tol;
    const double lo1 = integrate(f, delta / 10, delta, collar_tol, 4096).value;
    const double hi1 =
        integrate(f, 1.0 - delta, 1.0 - delta / 10, collar_tol, 4096).value;
    const double lo2 =
        integrate(f, delta / 100, delta / 10, collar_tol, 4096).value;
    const double hi2 =
        integrate(f, 1.0 - delta / 10, 1.0 - delta / 100, collar_tol, 4096).value;
    const double t1 = lo1 + hi1;
    const double t2 = lo2 + hi2;
    const double growth_floor = std::max(1e3 * tol, 1e-6);
    if (!std::isfinite(t1) || !std::isfinite(t2) ||
        std::fabs(t1) > kBlowup || std::fabs(t2) > kBlowup) {
        out.infinite = true;
        return out;
    }
    if (std::fabs(t2) > growth_floor && std::fabs(t2) >= 0.5 * std::fabs(t1)) {
        out.infinite = true;
        return out;
    }
    out.value += t1 + t2;
    // An integrable endpoint power law u^-c leaves decade masses decaying
    // geometrically; extrapolate the remaining tail from the measured ratio.
    auto tail = [](double m1, double m2) {
        if (m1 == 0.0) return 0.0;
        const double rho = m2 / m1;
        if (!(rho > 0.0) || !(rho < 0.5)) return 0.0;
        return m2 * rho / (1.0 - rho);
    };
    out.value += tail(lo1, lo2) + tail(hi1, hi2);
    return out;
}

DivergenceResult kl_impl(const UnivariateDistribution& p1,
                         const UnivariateDistribution& p2, double tol) {
    check_support(p1);
    check_support(p2);
    auto f = [&](double x) {
        const double la = p1.log_pdf(x);
        const double lb = p2.log_pdf(x);
        const double a = std::exp(la);
        if (a == 0.0) return 0.0; // p log(p/q) -> 0 with p
        return a * (la - lb);
    };
    const auto ti = truncated_integral(f, combined_breakpoints(p1, p2), tol);
    DivergenceResult out;
    out.method = DivergenceMethod::DirectIntegral;
    if (ti.infinite) {
        out.is_infinite = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = ti.value;
    out.estimated_abs_error = ti.abs_error;
    return out;
}

} // namespace

DivergenceResult kl_divergence(const UnivariateDistribution& p1,
                               const UnivariateDistribution& p2, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kl_divergence: tol must be positive");
    return kl_impl(p1, p2, tol);
}

DivergenceResult alpha_divergence(const UnivariateDistribution& p1,
                                  const UnivariateDistribution& p2,
                                  double alpha, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("alpha_divergence: tol must be positive");
    if (alpha == 1.0) return kl_impl(p1, p2, tol);
    if (alpha == 0.0) return kl_impl(p2, p1, tol);

    check_support(p1);
    check_support(p2);
    const double denom = alpha * (alpha - 1.0);
    auto f = [&](double x) {
        return std::exp(alpha * p1.log_pdf(x) + (1.0 - alpha) * p2.log_pdf(x));
    };
    const auto ti =
        truncated_integral(f, combined_breakpoints(p1, p2), tol * std::fabs(denom));
    DivergenceResult out;
    out.method = DivergenceMethod::DirectIntegral;
    if (ti.infinite) {
        out.is_infinite = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = (ti.value - 1.0) / denom;
    out.estimated_abs_error = ti.abs_error / std::fabs(denom);
    return out;
}

DivergenceResult alpha_divergence_quantile_form(const UnivariateDistribution& p1,
                                                const UnivariateDistribution& p2,
                                                double alpha, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("alpha_divergence_quantile_form: tol must be positive");
    }
    if (alpha == 0.0) {
        // D_0(P1,P2) = D_1(P2,P1); reuse the alpha = 1 path with roles swapped.
        auto out = alpha_divergence_quantile_form(p2, p1, 1.0, tol);
        out.method = DivergenceMethod::QuantileRepresentation;
        return out;
    }
    check_support(p1);
    check_support(p2);

    // log density ratio at the gamma-quantile of P1
    auto log_ratio = [&](double u) {
        const double x = p1.quantile(u);
        return p2.log_pdf(x) - p1.log_pdf(x);
    };
    // u-locations of density jumps
    std::vector<double> cuts;
    for (double b : combined_breakpoints(p1, p2)) cuts.push_back(p1.cdf(b));
    // Concentrated density ratios put nearly all of the u-mass within a few
    // decades of an endpoint, where equispaced startup nodes never land; force
    // one segment per decade so the adaptive refinement can find that mass.
    for (double d = 0.1; d > kDeltaQuantile; d *= 0.1) {
        cuts.push_back(d);
        cuts.push_back(1.0 - d);
    }

    DivergenceResult out;
    out.method = DivergenceMethod::QuantileRepresentation;
    if (alpha == 1.0) {
        auto f = [&](double u) { return -log_ratio(u); };
        const auto ti = truncated_integral(f, cuts, tol, kDeltaQuantile);
        if (ti.infinite) {
            out.is_infinite = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        out.value = ti.value;
        out.estimated_abs_error = ti.abs_error;
        return out;
    }
    const double denom = alpha * (alpha - 1.0);
    auto f = [&](double u) { return std::exp((1.0 - alpha) * log_ratio(u)); };
    const auto ti =
        truncated_integral(f, cuts, tol * std::fabs(denom), kDeltaQuantile);
    if (ti.infinite) {
        out.is_infinite = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = (ti.value - 1.0) / denom;
    out.estimated_abs_error = ti.abs_error / std::fabs(denom);
    return out;
}

double bernoulli_kl(double p, double q) {
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0) {
        throw std::invalid_argument("bernoulli_kl: arguments must lie in [0,1]");
    }
    auto term = [](double a, double b) {
        if (a == 0.0) return 0.0;                                   // 0 log 0 = 0
        if (b == 0.0) return std::numeric_limits<double>::infinity(); // x log(x/0)
        return a * std::log(a / b);
    };
    return term(p, q) + term(1.0 - p, 1.0 - q);
}

double bernoulli_kl_plus(double p, double q) {
    return p < q ? bernoulli_kl(p, q) : 0.0;
}

} // namespace ebucb
