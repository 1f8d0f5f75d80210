#ifndef LDA_STUDY_ORC_SPEC_HPP
#define LDA_STUDY_ORC_SPEC_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "lda/math/rng.hpp"
#include "lda/severity/severity_model.hpp"

namespace lda {

/// Loss-generating process for one simulated ORC: Poisson frequency plus a
/// severity law that is either a single parametric family or the
/// lognormal/Burr mixture, with the reporting threshold at the severity's
/// 2.5% quantile and the true log 99.9% annual-loss quantile on record.
struct ORCSpec {
    enum class Severity { Burr, LogSaS, Mixture };

    int id = 0;
    double lambda = 100.0;
    double tau = 0.0;
    double true_log_q999 = 0.0;
    Severity severity = Severity::Burr;

    // Mixture: component 1 with probability beta, else component 2.
    double mixture_beta = 0.0;

    double sample_severity(Rng& rng) const;
    double severity_cdf(double x) const;
    /// Inverse severity CDF (bisection for the mixture).
    double severity_quantile(double p) const;

    /// The three Table-style ORC generators used throughout the studies.
    static const std::array<ORCSpec, 3>& standard();
};

struct GeneratedData {
    std::vector<std::vector<double>> full_by_year;      // all losses
    std::vector<std::vector<double>> observed_by_year;  // losses > tau
    std::vector<std::uint64_t> below_by_year;           // counts at or below tau
};

/// Simulates `years` of losses above and below the threshold.
/// Throws std::invalid_argument when years < 1.
GeneratedData generate_orc_data(const ORCSpec& spec, int years, Rng& rng);

/// Same, truncating at a caller-supplied threshold instead of spec.tau.
GeneratedData generate_orc_data(const ORCSpec& spec, int years, double tau, Rng& rng);

}  // namespace lda

#endif
