#include "ebucb/shift.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebucb {

ShiftFactors shift_factor(double epsilon, double alpha) {
    if (alpha >= 0.0 && alpha <= 1.0) {
        throw std::invalid_argument("shift_factor: alpha must lie outside [0,1]");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("shift_factor: epsilon must be positive");
    }
    ShiftFactors f;
    f.m_eps_alpha =
        std::pow(epsilon * alpha * (alpha - 1.0) + 1.0, 1.0 / (1.0 - alpha));
    f.alpha_tilde = alpha / (alpha - 1.0);
    return f;
}

namespace {

double bound_value(const ShiftBoundParams& p) {
    if (!(p.gamma > 0.0) || !(p.gamma < 1.0)) {
        throw std::invalid_argument("shift bound: gamma must lie in (0,1)");
    }
    const ShiftFactors f = shift_factor(p.epsilon, p.alpha);
    return 1.0 - p.gamma -
           f.m_eps_alpha * std::pow(1.0 - p.gamma, f.alpha_tilde);
}

} // namespace

double shift_upper_bound(const ShiftBoundParams& p) {
    if (!(p.alpha > 1.0)) {
        throw std::invalid_argument("shift_upper_bound: requires alpha > 1");
    }
    return bound_value(p);
}

double shift_lower_bound(const ShiftBoundParams& p) {
    if (!(p.alpha < 0.0)) {
        throw std::invalid_argument("shift_lower_bound: requires alpha < 0");
    }
    return bound_value(p);
}

double measure_shift(const UnivariateDistribution& p1,
                     const UnivariateDistribution& p2, double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::invalid_argument("measure_shift: gamma must lie in (0,1)");
    }
    return p2.cdf(p1.quantile(gamma)) - gamma;
}

std::shared_ptr<const PiecewiseReweighted> extremal_pair(DistPtr p1, double gamma,
                                                         double delta) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::invalid_argument("extremal_pair: gamma must lie in (0,1)");
    }
    if (!(delta > -gamma) || !(delta < 1.0 - gamma)) {
        throw std::invalid_argument("extremal_pair: delta must lie in (-gamma, 1-gamma)");
    }
    const double breakpoint = p1->quantile(gamma);
    const double left = (gamma + delta) / gamma;
    const double right = (1.0 - gamma - delta) / (1.0 - gamma);
    return std::make_shared<const PiecewiseReweighted>(std::move(p1), breakpoint,
                                                       left, right);
}

double g_of_delta(double gamma, double delta, double alpha) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::invalid_argument("g_of_delta: gamma must lie in (0,1)");
    }
    if (delta < -gamma || delta > 1.0 - gamma) {
        throw std::invalid_argument("g_of_delta: delta must lie in [-gamma, 1-gamma]");
    }
    if (alpha == 0.0 || alpha == 1.0) {
        throw std::invalid_argument("g_of_delta: alpha must differ from 0 and 1");
    }
    const double denom = alpha * (alpha - 1.0);
    auto pow_conv = [alpha](double x) {
        if (x == 0.0) {
            return alpha > 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        return std::pow(x, 1.0 - alpha);
    };
    const double left = gamma * pow_conv((gamma + delta) / gamma);
    const double right = (1.0 - gamma) * pow_conv((1.0 - gamma - delta) / (1.0 - gamma));
    return (left + right - 1.0) / denom;
}

} // namespace ebucb
