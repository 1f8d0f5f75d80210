#include "lda/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lda/frequency.hpp"

namespace lda {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kClampAt = 1.0 - 1e-12;
}  // namespace

std::string_view elimination_reason_name(EliminationReason r) {
    switch (r) {
        case EliminationReason::None: return "none";
        case EliminationReason::Boundary: return "boundary";
        case EliminationReason::TruncProbTooHigh: return "trunc_prob";
        case EliminationReason::ADRejected: return "ad_rejected";
        case EliminationReason::NonConvergence: return "non_convergence";
    }
    return "?";
}

double aic(const FitResult& fit) {
    if (!fit.converged || !std::isfinite(fit.loglik)) return kNaN;
    return -2.0 * fit.loglik + 2.0 * double(fit.n_params);
}

AdStatistic modified_ad_statistic(std::vector<double> f) {
    if (f.empty()) throw std::invalid_argument("modified_ad_statistic: empty sample");
    std::sort(f.begin(), f.end());
    const double n = double(f.size());
    AdStatistic out;
    double sum_f = 0.0, sum_w = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double fi = f[i];
        if (fi >= kClampAt) {
            fi = kClampAt;
            ++out.clamp_count;
        }
        if (fi < 0.0) fi = 0.0;
        sum_f += fi;
        const double w = 2.0 - (2.0 * double(i + 1) - 1.0) / n;
        sum_w += w * std::log1p(-fi);
    }
    out.value = n / 2.0 - 2.0 * sum_f - sum_w;
    return out;
}

AdStatistic modified_ad_statistic(const FitResult& fit, const TruncatedSample& sample) {
    const SeverityModel model(fit.family, fit.params);
    std::vector<double> f(sample.losses.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = conditional_cdf(model, sample.threshold, sample.losses[i]);
    return modified_ad_statistic(std::move(f));
}

AdTestResult ad_test(const FitResult& fit, const TruncatedSample& sample,
                     double level, int bootstrap, std::uint64_t seed,
                     const FitConfig& refit_config) {
    if (bootstrap < 199)
        throw std::invalid_argument("ad_test: need at least 199 bootstrap replicates");
    if (!fit.converged)
        throw std::invalid_argument("ad_test: fit did not converge");

    AdTestResult out;
    out.statistic = modified_ad_statistic(fit, sample).value;

    const SeverityModel model(fit.family, fit.params);
    const std::size_t n = sample.losses.size();
    int at_or_above = 0;
    for (int b = 0; b < bootstrap; ++b) {
        Rng rng = Rng::substream(seed, {0xad7e57ULL, static_cast<std::uint64_t>(b)});
        TruncatedSample boot;
        boot.threshold = sample.threshold;
        boot.losses.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            boot.losses[i] = conditional_quantile(model, sample.threshold, rng.uniform());
        const FitResult refit = fit_truncated(fit.family, boot, refit_config);
        double stat;
        if (refit.params.empty() || !std::isfinite(refit.loglik)) {
            stat = std::numeric_limits<double>::infinity();  // failed refit counts as extreme
        } else {
            stat = modified_ad_statistic(refit, boot).value;
        }
        if (stat >= out.statistic) ++at_or_above;
    }
    out.pvalue = double(at_or_above) / double(bootstrap);
    out.reject = out.pvalue < 1.0 - level;
    return out;
}

bool truncation_screen(const FitResult& fit, double cutoff) {
    return fit.threshold_probability >= cutoff;
}

double quantile_score(double forecast_quantile, const AnnualLossSeries& series,
                      double alpha) {
    if (series.values.empty())
        throw std::invalid_argument("quantile_score: empty annual-loss series");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("quantile_score: alpha must lie in (0,1)");
    double sum = 0.0;
    for (double lt : series.values) {
        const double indicator = forecast_quantile >= lt ? 1.0 : 0.0;
        sum += (indicator - alpha) * (forecast_quantile - lt);
    }
    return sum / double(series.values.size());
}

double integrated_qs(const AnnualLossModel& model, const AnnualLossSeries& series,
                     const QsGrid& grid) {
    if (grid.points < 2) throw std::invalid_argument("integrated_qs: need >= 2 grid points");
    const double h = (grid.alpha_hi - grid.alpha_lo) / double(grid.points - 1);
    double total = 0.0;
    for (int j = 0; j < grid.points; ++j) {
        const double alpha = grid.alpha_lo + h * double(j);
        const double s = quantile_score(model.quantile(alpha), series, alpha);
        const double w = (j == 0 || j == grid.points - 1) ? 0.5 : 1.0;
        total += w * s;
    }
    return total * h;
}

void rank_candidates(std::vector<CriteriaRecord>& records, SelectionMode mode) {
    if (records.empty()) throw std::invalid_argument("rank_candidates: no records");
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].eliminated) {
            records[i].rank = 9;
        } else {
            survivors.push_back(i);
        }
    }
    auto key = [&](std::size_t i) {
        return mode == SelectionMode::Qs ? records[i].qs : records[i].aic;
    };
    std::sort(survivors.begin(), survivors.end(), [&](std::size_t a, std::size_t b) {
        const double ka = key(a), kb = key(b);
        if (ka != kb) return ka < kb;
        if (records[a].n_params != records[b].n_params)
            return records[a].n_params < records[b].n_params;
        return records[a].family < records[b].family;
    });
    for (std::size_t r = 0; r < survivors.size(); ++r)
        records[survivors[r]].rank = int(r + 1);
}

OrcSelection select_for_orc(const TruncatedSample& sample,
                            const std::vector<std::uint64_t>& annual_counts,
                            const AnnualLossSeries& series,
                            const SelectionConfig& config, std::uint64_t seed,
                            std::uint64_t orc_salt) {
    OrcSelection out;
    out.observed_rate = estimate_rate(annual_counts);

    for (SeverityFamily family : config.candidates) {
        FitResult fit = fit_truncated(family, sample, config.fit);
        CriteriaRecord rec;
        rec.family = family;
        rec.n_params = fit.n_params;
        rec.trunc_prob = fit.threshold_probability;
        rec.aic = aic(fit);

        // Elimination screens in the paper's order of operations.
        if (fit.at_boundary) {
            rec.eliminated = true;
            rec.reason = EliminationReason::Boundary;
        } else if (!fit.converged) {
            rec.eliminated = true;
            rec.reason = EliminationReason::NonConvergence;
        } else if (truncation_screen(fit, config.trunc_prob_limit)) {
            rec.eliminated = true;
            rec.reason = EliminationReason::TruncProbTooHigh;
        }

        if (!rec.eliminated) {
            rec.ad_stat = modified_ad_statistic(fit, sample).value;
            if (config.mode == SelectionMode::AicAd) {
                const AdTestResult ad = ad_test(fit, sample, config.ad_level,
                                                config.bootstrap,
                                                orc_salt ^ (seed + std::uint64_t(family)),
                                                config.fit);
                rec.ad_pvalue = ad.pvalue;
                if (ad.reject) {
                    rec.eliminated = true;
                    rec.reason = EliminationReason::ADRejected;
                }
            }
        }

        if (!rec.eliminated && config.mode == SelectionMode::Qs) {
            const SeverityModel severity(fit.family, fit.params);
            const double lambda_star =
                scale_rate(out.observed_rate, fit.threshold_probability);
            SimulateOptions opts;
            opts.draws = config.annual_draws;
            opts.reject_negative = config.reject_negative;
            opts.workers = config.workers;
            const AnnualLossModel model = build_annual_loss_model(
                lambda_star, severity,
                Rng::substream(seed, {orc_salt, std::uint64_t(family), 0x5157ULL}).next_u64(),
                opts);
            rec.qs = integrated_qs(model, series, config.qs_grid);
            out.annual_models.emplace(family, model);
        }

        out.records.push_back(rec);
        out.fits.push_back(std::move(fit));
    }

    rank_candidates(out.records, config.mode);
    for (std::size_t i = 0; i < out.records.size(); ++i)
        if (out.records[i].rank == 1) out.selected = int(i);
    return out;
}

}  // namespace lda
