#ifndef LDA_SELECTION_HPP
#define LDA_SELECTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lda/annual_loss.hpp"
#include "lda/fit/likelihood.hpp"

namespace lda {

enum class EliminationReason { None, Boundary, TruncProbTooHigh, ADRejected, NonConvergence };

std::string_view elimination_reason_name(EliminationReason r);

/// Per-candidate criteria values, elimination flag, and rank. Rank 9 marks an
/// eliminated candidate; survivors are ranked 1..s by the active criterion.
struct CriteriaRecord {
    SeverityFamily family = SeverityFamily::Lognormal;
    int n_params = 0;
    double aic = std::numeric_limits<double>::quiet_NaN();
    double ad_stat = std::numeric_limits<double>::quiet_NaN();
    double ad_pvalue = std::numeric_limits<double>::quiet_NaN();
    double trunc_prob = std::numeric_limits<double>::quiet_NaN();
    double qs = std::numeric_limits<double>::quiet_NaN();
    bool eliminated = false;
    EliminationReason reason = EliminationReason::None;
    int rank = 0;
};

/// Observed annual losses L_t: reported (above-threshold) losses summed by year.
struct AnnualLossSeries {
    std::vector<double> values;
};

/// AIC = -2 loglik + 2k. NaN for fits that did not converge.
double aic(const FitResult& fit);

struct AdStatistic {
    double value = 0.0;
    int clamp_count = 0;  // conditional CDF values clamped just below 1
};

/// Modified Anderson-Darling statistic from conditional CDF values
/// (sorted internally): n/2 - 2 sum F_i - sum [2 - (2i-1)/n] log(1 - F_i).
AdStatistic modified_ad_statistic(std::vector<double> conditional_cdf_values);

/// Statistic for a fitted candidate against its truncated sample.
AdStatistic modified_ad_statistic(const FitResult& fit, const TruncatedSample& sample);

struct AdTestResult {
    double statistic = 0.0;
    double pvalue = 1.0;
    bool reject = false;
};

/// Parametric-bootstrap AD test: simulate `bootstrap` samples of size n from
/// the fitted conditional law, refit, recompute the statistic; the p-value is
/// the fraction of bootstrap statistics at or above the observed one.
/// Rejects when p < 1 - level. Requires bootstrap >= 199.
AdTestResult ad_test(const FitResult& fit, const TruncatedSample& sample,
                     double level, int bootstrap, std::uint64_t seed,
                     const FitConfig& refit_config = {});

/// True when the fitted truncation probability calls for elimination
/// (trunc_prob at or above the cutoff, default 0.5).
bool truncation_screen(const FitResult& fit, double cutoff = 0.5);

/// Quantile scoring function S = (1/T) sum (1(q >= L_t) - alpha)(q - L_t).
double quantile_score(double forecast_quantile, const AnnualLossSeries& series,
                      double alpha);

struct QsGrid {
    double alpha_lo = 0.75;
    double alpha_hi = 0.9995;
    int points = 200;
};

/// Composite-trapezoid integral of the quantile score over the QS grid,
/// scoring the model's interpolated quantile at each grid level.
double integrated_qs(const AnnualLossModel& model, const AnnualLossSeries& series,
                     const QsGrid& grid = {});

enum class SelectionMode { AicAd, Qs };

/// Ranks survivors 1..s ascending by QS (or AIC in AIC mode); eliminated
/// candidates receive rank 9. Ties break on fewer parameters, then on the
/// family enum order.
void rank_candidates(std::vector<CriteriaRecord>& records, SelectionMode mode);

// ---------------------------------------------------------------------------
// Per-ORC candidate evaluation: fit every candidate, apply the elimination
// screens in the paper's order (boundary, truncation probability, AD in
// AIC mode), score survivors, and rank.
// ---------------------------------------------------------------------------

struct SelectionConfig {
    std::vector<SeverityFamily> candidates{kAllFamilies.begin(), kAllFamilies.end()};
    SelectionMode mode = SelectionMode::Qs;
    FitConfig fit;
    std::size_t annual_draws = 250000;
    int bootstrap = 500;       // AD bootstrap replicates (AIC mode)
    double ad_level = 0.95;
    double trunc_prob_limit = 0.5;
    QsGrid qs_grid;
    bool reject_negative = false;  // positive-only severity draws
    unsigned workers = 0;
};

struct OrcSelection {
    std::vector<CriteriaRecord> records;
    std::vector<FitResult> fits;              // aligned with records
    std::map<SeverityFamily, AnnualLossModel> annual_models;  // QS-mode survivors
    double observed_rate = 0.0;
    int selected = -1;  // index into records of the rank-1 survivor, -1 if none
};

/// `orc_salt` keys the deterministic substreams for bootstrap and simulation.
OrcSelection select_for_orc(const TruncatedSample& sample,
                            const std::vector<std::uint64_t>& annual_counts,
                            const AnnualLossSeries& series,
                            const SelectionConfig& config, std::uint64_t seed,
                            std::uint64_t orc_salt);

}  // namespace lda

#endif
