#ifndef LDA_STUDY_HARNESS_HPP
#define LDA_STUDY_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lda/fit/likelihood.hpp"
#include "lda/selection.hpp"
#include "lda/study/orc_spec.hpp"

namespace lda {

/// Shared experiment knobs. Zero values fall back to the experiment's
/// default at the current scale: reduced defaults finish in minutes, the
/// full_scale flag restores the original study sizes.
struct StudyConfig {
    std::uint64_t seed = 1;
    std::string out_dir;       // when set, CSV + JSON artifacts are written here
    int sims = 0;
    int years = 0;
    std::size_t annual_draws = 0;
    int bootstrap = 0;
    int replicates = 0;        // severity-comparison study repeats
    bool full_scale = false;
    unsigned workers = 0;
    FitConfig fit;
};

// ---------------------------------------------------------------------------
// AIC/AD selection-instability study: repeated simulations, expanding
// training windows, AIC selection after boundary/truncation/AD screens.
// ---------------------------------------------------------------------------

struct AicAdStudyResult {
    struct Forecast {
        int orc = 0;
        int sim = 0;
        int year_label = 0;       // forecast year
        bool has_selection = false;
        SeverityFamily selected = SeverityFamily::Lognormal;
        double log_q999 = 0.0;
    };
    struct AdCount {
        int orc = 0;
        SeverityFamily family = SeverityFamily::Lognormal;
        int accepts = 0;          // AD ran and did not reject
        int rejects = 0;          // AD ran and rejected
        int pre_eliminated = 0;   // eliminated before the AD stage
        int decisions = 0;
    };
    std::vector<Forecast> forecasts;
    std::vector<AdCount> ad_counts;
};

AicAdStudyResult run_aic_ad_study(const StudyConfig& config);

// ---------------------------------------------------------------------------
// GandH versus LogSaS forecast comparison with per-window parameter tables.
// ---------------------------------------------------------------------------

struct GhVsLsasResult {
    struct Row {
        int orc = 0;
        int replicate = 0;
        int year_label = 0;
        SeverityFamily family = SeverityFamily::Lognormal;
        std::vector<double> params;
        double loglik = 0.0;
        bool usable = false;
        double log_q999 = 0.0;
        double p_negative = 0.0;  // fitted probability of a negative loss
    };
    std::vector<Row> rows;
};

GhVsLsasResult run_gh_vs_lsas_study(const StudyConfig& config);

// ---------------------------------------------------------------------------
// Truncation-versus-censoring probability study (Burr-only candidate).
// ---------------------------------------------------------------------------

struct CensoringStudyResult {
    struct Row {
        double level = 0.0;        // true threshold probability
        double trunc_mean = 0.0;
        double trunc_sd = 0.0;
        double cens_mean = 0.0;
        double cens_sd = 0.0;
        int co_converged = 0;      // replicates where both fits were usable
        int sims = 0;
    };
    std::vector<Row> rows;
};

CensoringStudyResult run_censoring_study(const StudyConfig& config);

// ---------------------------------------------------------------------------
// Quantile-score ranking study: 50 simulated years, QS over the top 25% of
// the annual loss distribution, ranks 1..9 per candidate and replicate.
// ---------------------------------------------------------------------------

struct QsRankingResult {
    struct Row {
        int orc = 0;
        int replicate = 0;
        SeverityFamily family = SeverityFamily::Lognormal;
        int rank = 0;
        bool eliminated = false;
        EliminationReason reason = EliminationReason::None;
        double qs = 0.0;
        double trunc_prob = 0.0;
    };
    std::vector<Row> rows;
};

QsRankingResult run_qs_ranking_study(const StudyConfig& config);

/// Dispatches an experiment by name ("aic_ad", "gh_vs_lsas", "censoring",
/// "qs_rank"); throws std::invalid_argument for unknown names.
void run_study(const std::string& name, const StudyConfig& config);

}  // namespace lda

#endif
