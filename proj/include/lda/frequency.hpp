#ifndef LDA_FREQUENCY_HPP
#define LDA_FREQUENCY_HPP

#include <cstdint>
#include <vector>

namespace lda {

/// Annual Poisson loss-frequency estimate for one ORC: the observed rate of
/// reported (above-threshold) events and the rate scaled up to all events.
struct FrequencyEstimate {
    double observed_rate = 0.0;  // mean annual count above the threshold
    double scaled_rate = 0.0;    // observed_rate / (1 - F(tau))
    int years = 0;
};

/// Mean of the annual counts. Throws std::invalid_argument on an empty vector.
double estimate_rate(const std::vector<std::uint64_t>& annual_counts);

/// lambda* = observed_rate / (1 - trunc_prob). Requires 0 <= trunc_prob < 1.
double scale_rate(double observed_rate, double trunc_prob);

FrequencyEstimate estimate_frequency(const std::vector<std::uint64_t>& annual_counts,
                                     double trunc_prob);

}  // namespace lda

#endif
