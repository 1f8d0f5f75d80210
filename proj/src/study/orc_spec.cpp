#include "lda/study/orc_spec.hpp"

#include <cmath>
#include <stdexcept>

namespace lda {

namespace {

const SeverityModel& burr_component() {
    static const SeverityModel model(SeverityFamily::Burr, {0.07, 12.0, 1.1});
    return model;
}

const SeverityModel& logsas_component() {
    static const SeverityModel model(SeverityFamily::LogSaS, {1.06, 0.37, 1.65, 0.97});
    return model;
}

const SeverityModel& lognormal_component() {
    static const SeverityModel model(SeverityFamily::Lognormal, {0.7, 0.5});
    return model;
}

}  // namespace

double ORCSpec::sample_severity(Rng& rng) const {
    switch (severity) {
        case Severity::Burr: return burr_component().sample(rng);
        case Severity::LogSaS: return logsas_component().sample(rng);
        case Severity::Mixture:
            // Per-loss Bernoulli component selection.
            return rng.uniform() < mixture_beta ? lognormal_component().sample(rng)
                                                : burr_component().sample(rng);
    }
    return 0.0;
}

double ORCSpec::severity_cdf(double x) const {
    switch (severity) {
        case Severity::Burr: return burr_component().cdf(x);
        case Severity::LogSaS: return logsas_component().cdf(x);
        case Severity::Mixture:
            return mixture_beta * lognormal_component().cdf(x) +
                   (1.0 - mixture_beta) * burr_component().cdf(x);
    }
    return 0.0;
}

double ORCSpec::severity_quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("severity_quantile: p must lie in (0,1)");
    if (severity != Severity::Mixture) {
        return severity == Severity::Burr ? burr_component().quantile(p)
                                          : logsas_component().quantile(p);
    }
    double lo = 1e-12, hi = 1.0;
    while (severity_cdf(hi) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (severity_cdf(mid) < p ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

const std::array<ORCSpec, 3>& ORCSpec::standard() {
    static const std::array<ORCSpec, 3> specs = [] {
        std::array<ORCSpec, 3> s{};
        s[0] = {1, 100.0, 1.026, 13.774, Severity::Burr, 0.0};
        s[1] = {2, 100.0, 3.147, 10.543, Severity::LogSaS, 0.0};
        s[2] = {3, 100.0, 0.923, 13.362, Severity::Mixture, 0.33};
        return s;
    }();
    return specs;
}

GeneratedData generate_orc_data(const ORCSpec& spec, int years, Rng& rng) {
    return generate_orc_data(spec, years, spec.tau, rng);
}

GeneratedData generate_orc_data(const ORCSpec& spec, int years, double tau, Rng& rng) {
    if (years < 1) throw std::invalid_argument("generate_orc_data: years must be >= 1");
    GeneratedData data;
    data.full_by_year.resize(years);
    data.observed_by_year.resize(years);
    data.below_by_year.assign(years, 0);
    for (int y = 0; y < years; ++y) {
        const std::uint64_t count = rng.poisson(spec.lambda);
        auto& full = data.full_by_year[y];
        auto& obs = data.observed_by_year[y];
        full.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = spec.sample_severity(rng);
            full.push_back(x);
            if (x > tau) obs.push_back(x);
            else ++data.below_by_year[y];
        }
    }
    return data;
}

}  // namespace lda
