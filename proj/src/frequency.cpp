#include "lda/frequency.hpp"

#include <stdexcept>

namespace lda {

double estimate_rate(const std::vector<std::uint64_t>& annual_counts) {
    if (annual_counts.empty())
        throw std::invalid_argument("estimate_rate: no annual counts");
    double sum = 0.0;
    for (std::uint64_t c : annual_counts) sum += double(c);
    return sum / double(annual_counts.size());
}

double scale_rate(double observed_rate, double trunc_prob) {
    if (observed_rate < 0.0)
        throw std::invalid_argument("scale_rate: rate must be nonnegative");
    if (!(trunc_prob >= 0.0) || trunc_prob >= 1.0)
        throw std::invalid_argument("scale_rate: truncation probability must lie in [0,1)");
    return observed_rate / (1.0 - trunc_prob);
}

FrequencyEstimate estimate_frequency(const std::vector<std::uint64_t>& annual_counts,
                                     double trunc_prob) {
    FrequencyEstimate est;
    est.observed_rate = estimate_rate(annual_counts);
    est.scaled_rate = scale_rate(est.observed_rate, trunc_prob);
    est.years = int(annual_counts.size());
    return est;
}

}  // namespace lda
