#ifndef EBUCB_DIST_HPP
#define EBUCB_DIST_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "ebucb/rng.hpp"

namespace ebucb {

/// Abstract distribution on [0,1]. All concrete types are immutable after
/// construction and safe to share across threads; samplers mutate only the
/// caller-owned generator.
class UnivariateDistribution {
  public:
    virtual ~UnivariateDistribution() = default;

    virtual double pdf(double x) const = 0;
    virtual double cdf(double x) const = 0;
    virtual double quantile(double u) const = 0;
    virtual double sample(Rng& rng) const { return quantile(rng.uniform()); }

    // P(X > x). Override where 1 - cdf would lose the tail to rounding.
    virtual double survival(double x) const { return 1.0 - cdf(x); }

    // log density; override where pdf underflows in the far tails.
    virtual double log_pdf(double x) const { return std::log(pdf(x)); }

    // log P(X > x); override where the tail underflows a double.
    virtual double log_survival(double x) const { return std::log(survival(x)); }

    // Interior points where the density jumps (integration hints).
    virtual std::vector<double> density_breakpoints() const { return {}; }
};

using DistPtr = std::shared_ptr<const UnivariateDistribution>;

struct BetaParams {
    double a;
    double b;
};

class BetaDist final : public UnivariateDistribution {
  public:
    explicit BetaDist(BetaParams p);
    BetaDist(double a, double b) : BetaDist(BetaParams{a, b}) {}

    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double u) const override;
    double survival(double x) const override;
    double log_pdf(double x) const override;
    double log_survival(double x) const override;

    const BetaParams& params() const { return params_; }
    double mean() const { return params_.a / (params_.a + params_.b); }
    // true when the density is unbounded at 0 or 1 (a<1 or b<1)
    bool endpoint_singular() const { return params_.a < 1.0 || params_.b < 1.0; }

  private:
    BetaParams params_;
    double log_norm_; // log B(a,b)
};

class BetaMixture final : public UnivariateDistribution {
  public:
    BetaMixture(std::vector<double> weights, std::vector<BetaParams> components);

    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double u) const override;
    double survival(double x) const override;
    double log_pdf(double x) const override;
    // Draws a component index by weight, then samples the component.
    double sample(Rng& rng) const override;

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<BetaDist>& components() const { return components_; }

  private:
    std::vector<double> weights_;
    std::vector<BetaDist> components_;
};

/// Density equal to base scaled by left_factor below the breakpoint and
/// right_factor above it. The factors must keep total mass 1.
class PiecewiseReweighted final : public UnivariateDistribution {
  public:
    PiecewiseReweighted(DistPtr base, double breakpoint, double left_factor,
                        double right_factor);
    // For boosts concentrating mass on a tail whose base probability
    // underflows a double: the right factor is given (and kept) in log form.
    static PiecewiseReweighted from_log_right_factor(DistPtr base,
                                                     double breakpoint,
                                                     double left_factor,
                                                     double log_right_factor);

    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double u) const override;
    double survival(double x) const override;
    double log_pdf(double x) const override;
    double log_survival(double x) const override;

    double breakpoint() const { return breakpoint_; }
    double left_factor() const { return left_factor_; }
    double right_factor() const { return right_factor_; }
    const UnivariateDistribution& base() const { return *base_; }

    std::vector<double> density_breakpoints() const override;

  private:
    struct LogRightTag {};
    PiecewiseReweighted(LogRightTag, DistPtr base, double breakpoint,
                        double left_factor, double log_right_factor);

    DistPtr base_;
    double breakpoint_;
    double left_factor_;
    double right_factor_;     // exp(log_right_factor_); may overflow to inf
    double log_right_factor_;
    double base_cdf_at_break_;
    double base_log_surv_at_break_;
    double mass_left_;  // left_factor * F_base(breakpoint)
    double mass_right_; // right_factor * S_base(breakpoint)
};

// Left boost: density multiplied by 1/r above b, and by
// (1 - (1/r) S(b)) / F(b) below b. Requires r > 1 and F_base(b) > 0 (the
// boosted side must carry numeric mass).
PiecewiseReweighted make_piecewise_left_boost(DistPtr base, double b, double r);

// Right boost: density multiplied by 1/r below b, and by
// (1 - (1/r) F(b)) / S(b) above b, carried in log form so far tails survive.
// Requires r > 1 and b interior to the base support.
PiecewiseReweighted make_piecewise_right_boost(DistPtr base, double b, double r);

// Generic numeric quantile: bracketed bisection on [0,1] to width 1e-13,
// then a few Newton polish steps using the density.
double invert_cdf(const UnivariateDistribution& d, double u);

// Solves log_survival(x) = ls; resolves tail targets far below double range.
double invert_log_survival(const UnivariateDistribution& d, double ls);

} // namespace ebucb

#endif
