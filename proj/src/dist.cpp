#include "ebucb/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "ebucb/special.hpp"

namespace ebucb {

double invert_cdf(const UnivariateDistribution& d, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (d.cdf(mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double f = d.cdf(x) - u;
        const double p = d.pdf(x);
        if (!(p > 0.0) || !std::isfinite(p)) break;
        double next = x - f / p;
        if (next <= lo || next >= hi) break;
        x = next;
    }
    return x;
}

double invert_log_survival(const UnivariateDistribution& d, double ls) {
    if (ls >= 0.0) return 0.0;
    if (ls == -std::numeric_limits<double>::infinity()) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (d.log_survival(mid) > ls) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double f = d.log_survival(x) - ls;
        // d/dx log S = -pdf / S
        const double slope = std::exp(d.log_pdf(x) - d.log_survival(x));
        if (!(slope > 0.0) || !std::isfinite(slope)) break;
        double next = x + f / slope;
        if (next <= lo || next >= hi) break;
        x = next;
    }
    return x;
}

// ---------------------------------------------------------------- BetaDist

BetaDist::BetaDist(BetaParams p) : params_(p) {
    if (!(p.a > 0.0) || !(p.b > 0.0)) {
        throw std::invalid_argument("BetaDist: shape parameters must be positive");
    }
    log_norm_ = log_beta(p.a, p.b);
}

double BetaDist::pdf(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    const double a = params_.a, b = params_.b;
    if (x == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        if (a > 1.0) return 0.0;
        return std::exp(-log_norm_); // a == 1: finite limit b
    }
    if (x == 1.0) {
        if (b < 1.0) return std::numeric_limits<double>::infinity();
        if (b > 1.0) return 0.0;
        return std::exp(-log_norm_);
    }
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_norm_);
}

double BetaDist::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return ibeta(params_.a, params_.b, x);
}

double BetaDist::quantile(double u) const {
    return invert_cdf(*this, u);
}

double BetaDist::survival(double x) const {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return ibeta(params_.b, params_.a, 1.0 - x);
}

double BetaDist::log_survival(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    return log_ibeta(params_.b, params_.a, 1.0 - x);
}

double BetaDist::log_pdf(double x) const {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (x < 0.0 || x > 1.0) return kNegInf;
    if (x == 0.0 || x == 1.0) return std::log(pdf(x));
    return (params_.a - 1.0) * std::log(x) +
           (params_.b - 1.0) * std::log1p(-x) - log_norm_;
}

// -------------------------------------------------------------- BetaMixture

BetaMixture::BetaMixture(std::vector<double> weights,
                         std::vector<BetaParams> components)
    : weights_(std::move(weights)) {
    if (weights_.empty() || weights_.size() != components.size()) {
        throw std::invalid_argument("BetaMixture: need matching, nonempty weights/components");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw std::invalid_argument("BetaMixture: negative weight");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("BetaMixture: weights must sum to 1");
    }
    components_.reserve(components.size());
    for (const auto& c : components) components_.emplace_back(c);
}

double BetaMixture::pdf(double x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        v += weights_[i] * components_[i].pdf(x);
    }
    return v;
}

double BetaMixture::cdf(double x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        v += weights_[i] * components_[i].cdf(x);
    }
    return v;
}

double BetaMixture::quantile(double u) const {
    return invert_cdf(*this, u);
}

double BetaMixture::survival(double x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        v += weights_[i] * components_[i].survival(x);
    }
    return v;
}

double BetaMixture::log_pdf(double x) const {
    // log-sum-exp over weighted component log densities
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        terms[i] = weights_[i] > 0.0
                       ? std::log(weights_[i]) + components_[i].log_pdf(x)
                       : -std::numeric_limits<double>::infinity();
        m = std::max(m, terms[i]);
    }
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

double BetaMixture::sample(Rng& rng) const {
    double u = rng.uniform();
    std::size_t idx = weights_.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        if (u < acc) {
            idx = i;
            break;
        }
    }
    return components_[idx].quantile(rng.uniform());
}

// ------------------------------------------------------ PiecewiseReweighted

PiecewiseReweighted::PiecewiseReweighted(DistPtr base, double breakpoint,
                                         double left_factor, double right_factor)
    : PiecewiseReweighted(LogRightTag{}, std::move(base), breakpoint,
                          left_factor, std::log(right_factor)) {}

PiecewiseReweighted PiecewiseReweighted::from_log_right_factor(
    DistPtr base, double breakpoint, double left_factor,
    double log_right_factor) {
    return PiecewiseReweighted(LogRightTag{}, std::move(base), breakpoint,
                               left_factor, log_right_factor);
}

PiecewiseReweighted::PiecewiseReweighted(LogRightTag, DistPtr base,
                                         double breakpoint, double left_factor,
                                         double log_right_factor)
    : base_(std::move(base)),
      breakpoint_(breakpoint),
      left_factor_(left_factor),
      right_factor_(std::exp(log_right_factor)),
      log_right_factor_(log_right_factor) {
    if (!base_) throw std::invalid_argument("PiecewiseReweighted: null base");
    if (!(breakpoint_ > 0.0) || !(breakpoint_ < 1.0)) {
        throw std::invalid_argument("PiecewiseReweighted: breakpoint must be in (0,1)");
    }
    if (!(left_factor_ > 0.0) || std::isnan(log_right_factor_) ||
        log_right_factor_ == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("PiecewiseReweighted: factors must be positive");
    }
    base_cdf_at_break_ = base_->cdf(breakpoint_);
    base_log_surv_at_break_ = base_->log_survival(breakpoint_);
    mass_left_ = left_factor_ * base_cdf_at_break_;
    mass_right_ = std::exp(log_right_factor_ + base_log_surv_at_break_);
    if (std::fabs(mass_left_ + mass_right_ - 1.0) > 1e-9) {
        throw std::invalid_argument("PiecewiseReweighted: factors do not preserve total mass");
    }
}

double PiecewiseReweighted::pdf(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x < breakpoint_) return left_factor_ * base_->pdf(x);
    return std::exp(log_right_factor_ + base_->log_pdf(x));
}

double PiecewiseReweighted::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x <= breakpoint_) return left_factor_ * base_->cdf(x);
    return 1.0 - std::exp(log_right_factor_ + base_->log_survival(x));
}

double PiecewiseReweighted::quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (u <= mass_left_) {
        return base_->quantile(u / left_factor_);
    }
    return invert_log_survival(*base_, std::log1p(-u) - log_right_factor_);
}

double PiecewiseReweighted::log_pdf(double x) const {
    if (x < 0.0 || x > 1.0) return -std::numeric_limits<double>::infinity();
    if (x < breakpoint_) return std::log(left_factor_) + base_->log_pdf(x);
    return log_right_factor_ + base_->log_pdf(x);
}

double PiecewiseReweighted::survival(double x) const {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    if (x >= breakpoint_) {
        return std::exp(log_right_factor_ + base_->log_survival(x));
    }
    const double s =
        mass_right_ + left_factor_ * (base_cdf_at_break_ - base_->cdf(x));
    return std::min(1.0, std::max(mass_right_, s));
}

double PiecewiseReweighted::log_survival(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    if (x >= breakpoint_) return log_right_factor_ + base_->log_survival(x);
    return std::log(survival(x));
}

std::vector<double> PiecewiseReweighted::density_breakpoints() const {
    auto pts = base_->density_breakpoints();
    pts.push_back(breakpoint_);
    return pts;
}

namespace {

void check_boost_args(double b, double r) {
    if (!(r > 1.0)) throw std::invalid_argument("piecewise boost: requires r > 1");
    if (!(b > 0.0) || !(b < 1.0)) {
        throw std::invalid_argument("piecewise boost: breakpoint must be in (0,1)");
    }
}

} // namespace

PiecewiseReweighted make_piecewise_left_boost(DistPtr base, double b, double r) {
    check_boost_args(b, r);
    const double fb = base->cdf(b);
    const double sb = base->survival(b);
    if (!(fb > 0.0)) {
        throw std::invalid_argument("piecewise boost: no base mass below breakpoint");
    }
    const double right = 1.0 / r;
    const double left = (1.0 - right * sb) / fb;
    return PiecewiseReweighted(std::move(base), b, left, right);
}

PiecewiseReweighted make_piecewise_right_boost(DistPtr base, double b, double r) {
    check_boost_args(b, r);
    const double fb = base->cdf(b);
    const double lsb = base->log_survival(b);
    if (lsb == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("piecewise boost: no base mass above breakpoint");
    }
    const double left = 1.0 / r;
    const double log_right = std::log1p(-left * fb) - lsb;
    return PiecewiseReweighted::from_log_right_factor(std::move(base), b, left,
                                                      log_right);
}

} // namespace ebucb
