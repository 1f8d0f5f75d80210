#ifndef LDA_SEVERITY_SEVERITY_MODEL_HPP
#define LDA_SEVERITY_SEVERITY_MODEL_HPP

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "lda/math/rng.hpp"
#include "lda/severity/family.hpp"
#include "lda/severity/gh_transform.hpp"

namespace lda {

/// One candidate severity distribution: a family tag plus its parameter
/// vector, exposing pdf/cdf/quantile/sampling and tail metadata.
///
/// Parameter layouts (see family_param_count for the conventions):
///   Lognormal          (mu, sigma)
///   GeneralizedPareto  (u, theta, xi), u fixed at the reporting threshold
///   Burr               (alpha, gamma, theta)
///   Weibull            (a, theta)
///   Loglogistic        (gamma, theta)
///   GandH              (a, b, g, h)
///   LogSaS             (a, b, eps, delta)
///   SplicedLognLogn    (mu_b, sigma_b, mu_t, sigma_t, x_s, p_b, tau)
///   SplicedLognGPD     (mu_b, sigma_b, theta, xi, x_s, p_b, tau)
///
/// Instances are immutable after construction and safe for concurrent
/// evaluation; samplers draw from a caller-owned Rng.
class SeverityModel {
public:
    SeverityModel(SeverityFamily family, std::vector<double> params);

    SeverityFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    int estimated_param_count() const { return family_estimated_params(family_); }

    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;

    /// Inverse CDF; p must lie in (0,1).
    double quantile(double p) const;

    double sample(Rng& rng) const;
    std::vector<double> sample(std::size_t n, Rng& rng) const;

    struct PositiveSample {
        std::vector<double> values;
        double rejection_fraction = 0.0;  // share of draws discarded as <= 0
    };
    /// Rejection sampling that keeps only positive draws. Only GandH has
    /// support below zero; for the other families this never rejects.
    PositiveSample sample_positive(std::size_t n, Rng& rng) const;

    TailClass tail_class() const;
    std::pair<double, double> support() const;

    /// Throws std::invalid_argument when the vector violates the family's
    /// parameter domain.
    static void validate_params(SeverityFamily family, const std::vector<double>& params);

private:
    double spliced_cdf(double x) const;
    double spliced_log_pdf(double x) const;
    double spliced_quantile(double p) const;

    SeverityFamily family_;
    std::vector<double> params_;
    std::shared_ptr<const GhTransform> gh_;   // GandH only
    // Spliced normalization constants, precomputed from the parameter vector.
    double d1_ = 0.0;
    double d2_ = 0.0;
    double cdf_at_splice_ = 0.0;
    double tail_cdf_at_splice_ = 0.0;
};

/// True for families whose Appendix-style CDF already embeds the reporting
/// threshold in its normalization (the spliced families). Such models are
/// used as the conditional law of reported losses directly.
bool family_embeds_threshold(SeverityFamily family);

/// Fitted probability that a loss occurs at or below the threshold:
/// F(tau) for ordinary families, the body CDF at tau for spliced ones.
double threshold_probability(const SeverityModel& m, double tau);

/// Conditional CDF of a reported loss given exceedance of tau.
double conditional_cdf(const SeverityModel& m, double tau, double x);

/// Inverse of conditional_cdf in x.
double conditional_quantile(const SeverityModel& m, double tau, double p);

}  // namespace lda

#endif
