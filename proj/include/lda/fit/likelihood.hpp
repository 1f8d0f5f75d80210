#ifndef LDA_FIT_LIKELIHOOD_HPP
#define LDA_FIT_LIKELIHOOD_HPP

#include <cstdint>
#include <vector>

#include "lda/severity/severity_model.hpp"

namespace lda {

/// Reported losses above a known, non-random reporting threshold.
struct TruncatedSample {
    std::vector<double> losses;  // every entry > threshold
    double threshold = 0.0;
};

/// Reported losses plus the count of loss events at or below the threshold.
struct CensoredSample {
    std::vector<double> observed;  // every entry > threshold
    std::size_t below_count = 0;
    double threshold = 0.0;
};

struct FitConfig {
    std::uint64_t seed = 20240901;
    int restarts = 4;             // jittered restarts beyond the moment start
    double tol_obj = 1e-10;       // relative objective change
    double tol_step = 1e-8;       // simplex diameter
    int max_iter = 2000;
    double boundary_limit = 20.0;  // |transformed param| >= limit flags a boundary fit
    double clamp_limit = 25.0;     // hard clamp of the transformed space
    int spliced_grid_points = 10;  // x_s candidates between the 50th and 95th percentiles
};

struct FitResult {
    SeverityFamily family = SeverityFamily::Lognormal;
    std::vector<double> params;          // natural-space parameter vector
    double loglik = 0.0;
    bool converged = false;
    bool at_boundary = false;
    double threshold_probability = 0.0;  // F(tau; theta_hat)
    int n_params = 0;                    // estimated parameter count (AIC's k)
    int evaluations = 0;

    bool usable() const { return converged && !at_boundary; }
};

/// Truncated log-likelihood sum(log f(x_i)) - n log(1 - F(tau)), with the
/// conditioning term dropped for families whose CDF already embeds the
/// threshold. Returns -infinity when the parameters are invalid or any
/// density term vanishes.
double loglik_truncated(SeverityFamily family, const std::vector<double>& params,
                        const TruncatedSample& sample);

/// Censored log-likelihood (n - m) log F(tau) + sum(log f(x_i)).
double loglik_censored(SeverityFamily family, const std::vector<double>& params,
                       const CensoredSample& sample);

/// Maximum-likelihood fit of one candidate family to truncated data:
/// a moment-based start plus jittered restarts, Nelder-Mead in an
/// unconstrained reparameterization, and a quasi-Newton polish.
/// Never throws for optimizer failure; inspect converged/at_boundary.
FitResult fit_truncated(SeverityFamily family, const TruncatedSample& sample,
                        const FitConfig& config = {});

FitResult fit_censored(SeverityFamily family, const CensoredSample& sample,
                       const FitConfig& config = {});

}  // namespace lda

#endif
