#ifndef LDA_ANNUAL_LOSS_HPP
#define LDA_ANNUAL_LOSS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lda/math/pchip.hpp"
#include "lda/severity/severity_model.hpp"

namespace lda {

struct SimulateOptions {
    std::size_t draws = 250000;      // annual losses per model
    bool reject_negative = false;    // positive-only severity draws (GandH)
    std::size_t chunk = 8192;        // per-substream simulation block
    unsigned workers = 0;            // 0 = worker_count()
};

/// Monte-Carlo model of one ORC's annual loss: sorted simulated compound
/// losses and the monotone interpolant of their empirical quantiles.
class AnnualLossModel {
public:
    AnnualLossModel() = default;

    /// Builds the quantile function from simulated losses (sorted internally).
    /// Plotting positions are i/(M+1); evaluation clamps to [p_1, p_M].
    explicit AnnualLossModel(std::vector<double> simulated_losses,
                             double scaled_rate = 0.0);

    double quantile(double p) const;
    const std::vector<double>& losses() const { return losses_; }
    double scaled_rate() const { return scaled_rate_; }
    double rejection_fraction() const { return rejection_fraction_; }
    void set_rejection_fraction(double f) { rejection_fraction_ = f; }

private:
    std::vector<double> losses_;  // ascending
    PchipInterpolant quantile_fn_;
    double scaled_rate_ = 0.0;
    double rejection_fraction_ = 0.0;
};

/// Draws `opts.draws` compound-Poisson annual losses: N ~ Poisson(rate) and
/// N unconditional severity draws per year. Work is partitioned into fixed
/// chunks with substreams keyed by (seed, chunk), so results are identical
/// for any worker count. Returns losses in chunk order (not sorted).
std::vector<double> simulate_annual_losses(double scaled_rate, const SeverityModel& severity,
                                           std::uint64_t seed, const SimulateOptions& opts,
                                           double* rejection_fraction = nullptr);

/// Convenience wrapper: simulate and wrap in an AnnualLossModel.
AnnualLossModel build_annual_loss_model(double scaled_rate, const SeverityModel& severity,
                                        std::uint64_t seed, const SimulateOptions& opts);

struct CapitalReport {
    std::map<std::string, double> per_orc_quantile;
    double firm_total = 0.0;
    double alpha = 0.999;
    bool clamped = false;  // alpha fell outside the interpolant's usable range
};

/// Sum of per-ORC annual-loss quantiles at level alpha (default 0.999).
CapitalReport capital_proxy(const std::map<std::string, AnnualLossModel>& models,
                            double alpha = 0.999);

}  // namespace lda

#endif
