#ifndef LDA_SEVERITY_FAMILY_HPP
#define LDA_SEVERITY_FAMILY_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace lda {

/// The nine candidate severity families. The enum order is also the
/// deterministic tie-break order used when ranking candidates.
enum class SeverityFamily {
    Lognormal,
    GeneralizedPareto,
    Burr,
    Weibull,
    Loglogistic,
    GandH,
    LogSaS,
    SplicedLognLogn,
    SplicedLognGPD,
};

inline constexpr std::array<SeverityFamily, 9> kAllFamilies = {
    SeverityFamily::Lognormal,       SeverityFamily::GeneralizedPareto,
    SeverityFamily::Burr,            SeverityFamily::Weibull,
    SeverityFamily::Loglogistic,     SeverityFamily::GandH,
    SeverityFamily::LogSaS,          SeverityFamily::SplicedLognLogn,
    SeverityFamily::SplicedLognGPD,
};

/// Right-tail decay class: faster than e^-x, slower than e^-x but faster
/// than any power law, power law, or bounded support.
enum class TailClass { SuperExponential, SubExponential, RegularlyVarying, Bounded };

/// Length of the parameter vector for the family.
/// Lognormal (mu, sigma); GPD (u, theta, xi) with u fixed at the threshold;
/// Burr (alpha, gamma, theta); Weibull (a, theta); Loglogistic (gamma, theta);
/// GandH (a, b, g, h); LogSaS (a, b, eps, delta);
/// spliced (mu_b, sigma_b, tail0, tail1, x_s, p_b, tau) where the tail pair is
/// (mu_t, sigma_t) or (theta, xi) and p_b, tau are data-derived constants.
std::size_t family_param_count(SeverityFamily family);

/// Number of parameters estimated from data (the k in AIC). Differs from
/// family_param_count where the vector carries fixed constants: GPD's u is
/// pinned to the threshold (k = 2) and the spliced families estimate four
/// continuous parameters plus the splicing point (k = 5).
int family_estimated_params(SeverityFamily family);

std::string_view family_name(SeverityFamily family);
SeverityFamily family_from_name(std::string_view name);

std::string_view tail_class_name(TailClass tc);

}  // namespace lda

#endif
