#include "lda/annual_loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lda/parallel.hpp"

namespace lda {

AnnualLossModel::AnnualLossModel(std::vector<double> simulated_losses, double scaled_rate)
    : losses_(std::move(simulated_losses)), scaled_rate_(scaled_rate) {
    if (losses_.size() < 4)
        throw std::invalid_argument("AnnualLossModel: need at least four simulated losses");
    std::sort(losses_.begin(), losses_.end());
    const std::size_t m = losses_.size();
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = double(i + 1) / double(m + 1);
    quantile_fn_ = PchipInterpolant(std::move(p), std::vector<double>(losses_));
}

double AnnualLossModel::quantile(double p) const {
    // PchipInterpolant clamps to [p_1, p_M] outside the node range.
    return quantile_fn_(p);
}

std::vector<double> simulate_annual_losses(double scaled_rate, const SeverityModel& severity,
                                           std::uint64_t seed, const SimulateOptions& opts,
                                           double* rejection_fraction) {
    if (scaled_rate < 0.0 || !std::isfinite(scaled_rate))
        throw std::invalid_argument("simulate_annual_losses: invalid rate");
    if (opts.draws < 1)
        throw std::invalid_argument("simulate_annual_losses: need at least one draw");

    const std::size_t m = opts.draws;
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk);
    const std::size_t n_chunks = (m + chunk - 1) / chunk;
    std::vector<double> losses(m);
    std::vector<std::uint64_t> rejected(n_chunks, 0), kept(n_chunks, 0);

    parallel_for(n_chunks, [&](std::size_t c) {
        Rng rng = Rng::substream(seed, {0x616e6e75616cULL, c});
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(begin + chunk, m);
        std::uint64_t rej = 0, tot = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t count = rng.poisson(scaled_rate);
            double sum = 0.0;
            for (std::uint64_t k = 0; k < count; ++k) {
                double x = severity.sample(rng);
                if (opts.reject_negative) {
                    while (x <= 0.0) {
                        ++rej;
                        ++tot;
                        x = severity.sample(rng);
                    }
                }
                ++tot;
                sum += x;
            }
            losses[i] = sum;
        }
        rejected[c] = rej;
        kept[c] = tot;
    }, opts.workers);

    if (rejection_fraction) {
        std::uint64_t rej = 0, tot = 0;
        for (std::size_t c = 0; c < n_chunks; ++c) { rej += rejected[c]; tot += kept[c]; }
        *rejection_fraction = tot > 0 ? double(rej) / double(tot) : 0.0;
    }
    return losses;
}

AnnualLossModel build_annual_loss_model(double scaled_rate, const SeverityModel& severity,
                                        std::uint64_t seed, const SimulateOptions& opts) {
    double rej = 0.0;
    std::vector<double> losses = simulate_annual_losses(scaled_rate, severity, seed, opts, &rej);
    AnnualLossModel model(std::move(losses), scaled_rate);
    model.set_rejection_fraction(rej);
    return model;
}

CapitalReport capital_proxy(const std::map<std::string, AnnualLossModel>& models,
                            double alpha) {
    CapitalReport report;
    report.alpha = alpha;
    for (const auto& [orc, model] : models) {
        const std::size_t m = model.losses().size();
        const double p_lo = 1.0 / double(m + 1);
        const double p_hi = double(m) / double(m + 1);
        if (alpha < p_lo || alpha > p_hi) report.clamped = true;
        const double q = model.quantile(alpha);
        report.per_orc_quantile[orc] = q;
        report.firm_total += q;
    }
    return report;
}

}  // namespace lda
