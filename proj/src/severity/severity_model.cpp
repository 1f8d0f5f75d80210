#include "lda/severity/severity_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lda/math/normal.hpp"

namespace lda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSmallShape = 1e-8;  // series/limit branch for g and xi near 0

double softplus(double t) {
    // log(1 + e^t) without overflow
    return t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double log_expm1(double s) {
    // log(e^s - 1) for s > 0
    return s > 30.0 ? s : std::log(std::expm1(s));
}

double log_cosh(double w) {
    const double a = std::fabs(w);
    return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

// GPD pieces with location u, scale theta, shape xi; support x > u.
double gpd_cdf(double x, double u, double theta, double xi) {
    if (x <= u) return 0.0;
    const double w = (x - u) / theta;
    if (std::fabs(xi) < kSmallShape) return -std::expm1(-w);
    const double t = xi * w;
    if (t <= -1.0) return 1.0;  // beyond the upper endpoint when xi < 0
    return -std::expm1(-std::log1p(t) / xi);
}

double gpd_log_pdf(double x, double u, double theta, double xi) {
    if (x <= u) return -kInf;
    const double w = (x - u) / theta;
    if (std::fabs(xi) < kSmallShape) return -std::log(theta) - w;
    const double t = xi * w;
    if (t <= -1.0) return -kInf;
    return -std::log(theta) - (1.0 / xi + 1.0) * std::log1p(t);
}

double gpd_quantile(double p, double u, double theta, double xi) {
    if (std::fabs(xi) < kSmallShape) return u - theta * std::log1p(-p);
    return u + theta / xi * std::expm1(-xi * std::log1p(-p));
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::size_t family_param_count(SeverityFamily family) {
    switch (family) {
        case SeverityFamily::Lognormal: return 2;
        case SeverityFamily::GeneralizedPareto: return 3;
        case SeverityFamily::Burr: return 3;
        case SeverityFamily::Weibull: return 2;
        case SeverityFamily::Loglogistic: return 2;
        case SeverityFamily::GandH: return 4;
        case SeverityFamily::LogSaS: return 4;
        case SeverityFamily::SplicedLognLogn: return 7;
        case SeverityFamily::SplicedLognGPD: return 7;
    }
    return 0;
}

int family_estimated_params(SeverityFamily family) {
    switch (family) {
        case SeverityFamily::Lognormal: return 2;
        case SeverityFamily::GeneralizedPareto: return 2;  // u pinned to tau
        case SeverityFamily::Burr: return 3;
        case SeverityFamily::Weibull: return 2;
        case SeverityFamily::Loglogistic: return 2;
        case SeverityFamily::GandH: return 4;
        case SeverityFamily::LogSaS: return 4;
        case SeverityFamily::SplicedLognLogn: return 5;  // 4 continuous + x_s
        case SeverityFamily::SplicedLognGPD: return 5;
    }
    return 0;
}

std::string_view family_name(SeverityFamily family) {
    switch (family) {
        case SeverityFamily::Lognormal: return "lognormal";
        case SeverityFamily::GeneralizedPareto: return "gpd";
        case SeverityFamily::Burr: return "burr";
        case SeverityFamily::Weibull: return "weibull";
        case SeverityFamily::Loglogistic: return "loglogistic";
        case SeverityFamily::GandH: return "gandh";
        case SeverityFamily::LogSaS: return "logsas";
        case SeverityFamily::SplicedLognLogn: return "spliced_logn_logn";
        case SeverityFamily::SplicedLognGPD: return "spliced_logn_gpd";
    }
    return "?";
}

SeverityFamily family_from_name(std::string_view name) {
    for (SeverityFamily f : kAllFamilies)
        if (family_name(f) == name) return f;
    throw std::invalid_argument("unknown severity family: " + std::string(name));
}

std::string_view tail_class_name(TailClass tc) {
    switch (tc) {
        case TailClass::SuperExponential: return "super_exponential";
        case TailClass::SubExponential: return "sub_exponential";
        case TailClass::RegularlyVarying: return "regularly_varying";
        case TailClass::Bounded: return "bounded";
    }
    return "?";
}

bool family_embeds_threshold(SeverityFamily family) {
    return family == SeverityFamily::SplicedLognLogn ||
           family == SeverityFamily::SplicedLognGPD;
}

void SeverityModel::validate_params(SeverityFamily family, const std::vector<double>& p) {
    require(p.size() == family_param_count(family),
            "severity params: wrong vector length for family");
    for (double v : p)
        require(std::isfinite(v), "severity params: values must be finite");
    switch (family) {
        case SeverityFamily::Lognormal:
            require(p[1] > 0.0, "lognormal: sigma must be positive");
            break;
        case SeverityFamily::GeneralizedPareto:
            require(p[1] > 0.0, "gpd: theta must be positive");
            break;
        case SeverityFamily::Burr:
            require(p[0] > 0.0 && p[1] > 0.0 && p[2] > 0.0,
                    "burr: alpha, gamma, theta must be positive");
            break;
        case SeverityFamily::Weibull:
            require(p[0] > 0.0 && p[1] > 0.0, "weibull: a, theta must be positive");
            break;
        case SeverityFamily::Loglogistic:
            require(p[0] > 0.0 && p[1] > 0.0, "loglogistic: gamma, theta must be positive");
            break;
        case SeverityFamily::GandH:
            require(p[1] > 0.0, "gandh: b must be positive");
            require(p[3] > 0.0, "gandh: h must be positive");
            break;
        case SeverityFamily::LogSaS:
            require(p[1] > 0.0, "logsas: b must be positive");
            require(p[3] > 0.0, "logsas: delta must be positive");
            break;
        case SeverityFamily::SplicedLognLogn:
        case SeverityFamily::SplicedLognGPD: {
            require(p[1] > 0.0, "spliced: body sigma must be positive");
            require(p[3] > 0.0 || family == SeverityFamily::SplicedLognGPD,
                    "spliced: tail sigma must be positive");
            if (family == SeverityFamily::SplicedLognLogn)
                require(p[3] > 0.0, "spliced: tail sigma must be positive");
            else
                require(p[2] > 0.0, "spliced: tail theta must be positive");
            const double x_s = p[4], p_b = p[5], tau = p[6];
            require(x_s > 0.0, "spliced: splicing point must be positive");
            require(p_b > 0.0 && p_b < 1.0, "spliced: p_b must lie in (0,1)");
            require(tau >= 0.0, "spliced: threshold must be nonnegative");
            require(x_s > tau, "spliced: splicing point must exceed the threshold");
            break;
        }
    }
}

SeverityModel::SeverityModel(SeverityFamily family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
    validate_params(family_, params_);
    if (family_ == SeverityFamily::GandH) {
        gh_ = std::make_shared<GhTransform>(params_[2], params_[3]);
        if (!gh_->usable())
            throw std::invalid_argument("gandh: transformation overflows for these g, h");
    }
    if (family_embeds_threshold(family_)) {
        const double mu_b = params_[0], sigma_b = params_[1];
        const double x_s = params_[4], p_b = params_[5], tau = params_[6];
        const double body_at_xs = norm_cdf((std::log(x_s) - mu_b) / sigma_b);
        const double body_at_tau =
            tau > 0.0 ? norm_cdf((std::log(tau) - mu_b) / sigma_b) : 0.0;
        d1_ = body_at_xs - (1.0 - p_b) * body_at_tau;
        require(d1_ > 0.0, "spliced: normalization constant D1 must be positive");
        if (family_ == SeverityFamily::SplicedLognLogn) {
            const double mu_t = params_[2], sigma_t = params_[3];
            tail_cdf_at_splice_ = norm_cdf((std::log(x_s) - mu_t) / sigma_t);
        } else {
            tail_cdf_at_splice_ = 0.0;  // GPD tail located at x_s
        }
        require(tail_cdf_at_splice_ < 1.0, "spliced: tail has no mass beyond x_s");
        d2_ = (1.0 - p_b) / d1_ * (body_at_xs - body_at_tau) / (1.0 - tail_cdf_at_splice_);
        cdf_at_splice_ = p_b * body_at_xs / d1_;
    }
}

double SeverityModel::spliced_cdf(double x) const {
    const double mu_b = params_[0], sigma_b = params_[1];
    const double x_s = params_[4], p_b = params_[5];
    if (x <= 0.0) return 0.0;
    if (x <= x_s) return p_b * norm_cdf((std::log(x) - mu_b) / sigma_b) / d1_;
    double tail;
    if (family_ == SeverityFamily::SplicedLognLogn) {
        const double mu_t = params_[2], sigma_t = params_[3];
        tail = norm_cdf((std::log(x) - mu_t) / sigma_t);
    } else {
        tail = gpd_cdf(x, x_s, params_[2], params_[3]);
    }
    return std::min(1.0, cdf_at_splice_ + d2_ * (tail - tail_cdf_at_splice_));
}

double SeverityModel::spliced_log_pdf(double x) const {
    if (x <= 0.0) return -kInf;
    const double x_s = params_[4], p_b = params_[5];
    if (x <= x_s) {
        const double mu_b = params_[0], sigma_b = params_[1];
        const double z = (std::log(x) - mu_b) / sigma_b;
        return std::log(p_b / d1_) + norm_log_pdf(z) - std::log(sigma_b) - std::log(x);
    }
    if (family_ == SeverityFamily::SplicedLognLogn) {
        const double mu_t = params_[2], sigma_t = params_[3];
        const double z = (std::log(x) - mu_t) / sigma_t;
        return std::log(d2_) + norm_log_pdf(z) - std::log(sigma_t) - std::log(x);
    }
    return std::log(d2_) + gpd_log_pdf(x, x_s, params_[2], params_[3]);
}

double SeverityModel::spliced_quantile(double p) const {
    const double mu_b = params_[0], sigma_b = params_[1];
    const double x_s = params_[4], p_b = params_[5];
    if (p <= cdf_at_splice_) {
        const double q = std::min(1.0 - 1e-16, p * d1_ / p_b);
        return std::exp(mu_b + sigma_b * norm_quantile(q));
    }
    const double q = std::min(1.0 - 1e-16, tail_cdf_at_splice_ + (p - cdf_at_splice_) / d2_);
    if (family_ == SeverityFamily::SplicedLognLogn) {
        const double mu_t = params_[2], sigma_t = params_[3];
        return std::exp(mu_t + sigma_t * norm_quantile(q));
    }
    return gpd_quantile(q, x_s, params_[2], params_[3]);
}

double SeverityModel::cdf(double x) const {
    switch (family_) {
        case SeverityFamily::Lognormal: {
            if (x <= 0.0) return 0.0;
            return norm_cdf((std::log(x) - params_[0]) / params_[1]);
        }
        case SeverityFamily::GeneralizedPareto:
            return gpd_cdf(x, params_[0], params_[1], params_[2]);
        case SeverityFamily::Burr: {
            if (x <= 0.0) return 0.0;
            const double t = params_[1] * (std::log(x) - std::log(params_[2]));
            return -std::expm1(-params_[0] * softplus(t));
        }
        case SeverityFamily::Weibull: {
            if (x <= 0.0) return 0.0;
            const double w = std::exp(params_[0] * (std::log(x) - std::log(params_[1])));
            return -std::expm1(-w);
        }
        case SeverityFamily::Loglogistic: {
            if (x <= 0.0) return 0.0;
            const double t = params_[0] * (std::log(x) - std::log(params_[1]));
            if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
            const double e = std::exp(t);
            return e / (1.0 + e);
        }
        case SeverityFamily::GandH: {
            if (!std::isfinite(x)) return x > 0 ? 1.0 : 0.0;
            return norm_cdf(gh_->inverse((x - params_[0]) / params_[1]));
        }
        case SeverityFamily::LogSaS: {
            if (x <= 0.0) return 0.0;
            const double s = (std::log(x) - params_[0]) / params_[1];
            const double eps = params_[2], delta = params_[3];
            if (eps == 0.0 && delta == 1.0) return norm_cdf(s);  // exact lognormal
            return norm_cdf(std::sinh(delta * std::asinh(s) - eps));
        }
        case SeverityFamily::SplicedLognLogn:
        case SeverityFamily::SplicedLognGPD:
            return spliced_cdf(x);
    }
    return 0.0;
}

double SeverityModel::log_pdf(double x) const {
    switch (family_) {
        case SeverityFamily::Lognormal: {
            if (x <= 0.0) return -kInf;
            const double z = (std::log(x) - params_[0]) / params_[1];
            return norm_log_pdf(z) - std::log(params_[1]) - std::log(x);
        }
        case SeverityFamily::GeneralizedPareto:
            return gpd_log_pdf(x, params_[0], params_[1], params_[2]);
        case SeverityFamily::Burr: {
            if (x <= 0.0) return -kInf;
            const double alpha = params_[0], gamma = params_[1], theta = params_[2];
            const double lx = std::log(x);
            const double t = gamma * (lx - std::log(theta));
            return std::log(alpha) + std::log(gamma) + (gamma - 1.0) * lx -
                   gamma * std::log(theta) - (alpha + 1.0) * softplus(t);
        }
        case SeverityFamily::Weibull: {
            if (x <= 0.0) return -kInf;
            const double a = params_[0], theta = params_[1];
            const double lx = std::log(x);
            const double w = std::exp(a * (lx - std::log(theta)));
            return std::log(a) - a * std::log(theta) + (a - 1.0) * lx - w;
        }
        case SeverityFamily::Loglogistic: {
            if (x <= 0.0) return -kInf;
            const double gamma = params_[0], theta = params_[1];
            const double t = gamma * (std::log(x) - std::log(theta));
            return std::log(gamma) - std::log(x) - t - 2.0 * softplus(-t);
        }
        case SeverityFamily::GandH: {
            if (!std::isfinite(x)) return -kInf;
            const double b = params_[1];
            const double z = gh_->inverse((x - params_[0]) / b);
            return norm_log_pdf(z) - std::log(b) - std::log(gh_->derivative(z));
        }
        case SeverityFamily::LogSaS: {
            if (x <= 0.0) return -kInf;
            const double a = params_[0], b = params_[1];
            const double eps = params_[2], delta = params_[3];
            const double lx = std::log(x);
            const double s = (lx - a) / b;
            if (eps == 0.0 && delta == 1.0)
                return norm_log_pdf(s) - std::log(b) - lx;  // exact lognormal
            const double w = delta * std::asinh(s) - eps;
            if (std::fabs(w) > 350.0) return -kInf;  // sinh(w)^2 overflows
            const double z = std::sinh(w);
            return norm_log_pdf(z) + std::log(delta) + log_cosh(w) -
                   0.5 * std::log1p(s * s) - std::log(b) - lx;
        }
        case SeverityFamily::SplicedLognLogn:
        case SeverityFamily::SplicedLognGPD:
            return spliced_log_pdf(x);
    }
    return -kInf;
}

double SeverityModel::pdf(double x) const {
    const double lp = log_pdf(x);
    return lp == -kInf ? 0.0 : std::exp(lp);
}

double SeverityModel::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
    switch (family_) {
        case SeverityFamily::Lognormal:
            return std::exp(params_[0] + params_[1] * norm_quantile(p));
        case SeverityFamily::GeneralizedPareto:
            return gpd_quantile(p, params_[0], params_[1], params_[2]);
        case SeverityFamily::Burr: {
            const double alpha = params_[0], gamma = params_[1], theta = params_[2];
            const double s = -std::log1p(-p) / alpha;
            return std::exp(std::log(theta) + log_expm1(s) / gamma);
        }
        case SeverityFamily::Weibull: {
            const double a = params_[0], theta = params_[1];
            return std::exp(std::log(theta) + std::log(-std::log1p(-p)) / a);
        }
        case SeverityFamily::Loglogistic: {
            const double gamma = params_[0], theta = params_[1];
            return std::exp(std::log(theta) + (std::log(p) - std::log1p(-p)) / gamma);
        }
        case SeverityFamily::GandH:
            return params_[0] + params_[1] * gh_->forward(norm_quantile(p));
        case SeverityFamily::LogSaS: {
            const double a = params_[0], b = params_[1];
            const double eps = params_[2], delta = params_[3];
            const double z = norm_quantile(p);
            if (eps == 0.0 && delta == 1.0) return std::exp(a + b * z);
            return std::exp(a + b * std::sinh((std::asinh(z) + eps) / delta));
        }
        case SeverityFamily::SplicedLognLogn:
        case SeverityFamily::SplicedLognGPD:
            return spliced_quantile(p);
    }
    return 0.0;
}

double SeverityModel::sample(Rng& rng) const {
    switch (family_) {
        case SeverityFamily::Lognormal:
            return std::exp(params_[0] + params_[1] * rng.normal());
        case SeverityFamily::GandH:
            return params_[0] + params_[1] * gh_->forward(rng.normal());
        case SeverityFamily::LogSaS: {
            const double z = rng.normal();
            const double eps = params_[2], delta = params_[3];
            if (eps == 0.0 && delta == 1.0) return std::exp(params_[0] + params_[1] * z);
            return std::exp(params_[0] +
                            params_[1] * std::sinh((std::asinh(z) + eps) / delta));
        }
        default:
            return quantile(rng.uniform());
    }
}

std::vector<double> SeverityModel::sample(std::size_t n, Rng& rng) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample(rng);
    return out;
}

SeverityModel::PositiveSample SeverityModel::sample_positive(std::size_t n, Rng& rng) const {
    PositiveSample result;
    result.values.reserve(n);
    std::size_t total = 0;
    const std::size_t cap = 1000 * n + 10000;
    while (result.values.size() < n) {
        if (total >= cap)
            throw std::runtime_error("sample_positive: rejection rate too high");
        const double x = sample(rng);
        ++total;
        if (x > 0.0) result.values.push_back(x);
    }
    result.rejection_fraction =
        total == 0 ? 0.0 : double(total - result.values.size()) / double(total);
    return result;
}

TailClass SeverityModel::tail_class() const {
    switch (family_) {
        case SeverityFamily::Lognormal: return TailClass::SubExponential;
        case SeverityFamily::GeneralizedPareto: {
            const double xi = params_[2];
            if (xi > kSmallShape) return TailClass::RegularlyVarying;
            if (xi < -kSmallShape) return TailClass::Bounded;
            return TailClass::SuperExponential;  // exponential boundary case
        }
        case SeverityFamily::Burr: return TailClass::RegularlyVarying;
        case SeverityFamily::Weibull:
            return params_[0] < 1.0 ? TailClass::SubExponential
                                    : TailClass::SuperExponential;
        case SeverityFamily::Loglogistic: return TailClass::RegularlyVarying;
        case SeverityFamily::GandH: return TailClass::RegularlyVarying;  // h > 0
        case SeverityFamily::LogSaS: {
            const double delta = params_[3];
            if (delta <= 0.5) return TailClass::RegularlyVarying;
            if (delta <= 1.0) return TailClass::SubExponential;
            return TailClass::SuperExponential;
        }
        case SeverityFamily::SplicedLognLogn: return TailClass::SubExponential;
        case SeverityFamily::SplicedLognGPD: {
            const double xi = params_[3];
            if (xi > kSmallShape) return TailClass::RegularlyVarying;
            if (xi < -kSmallShape) return TailClass::Bounded;
            return TailClass::SuperExponential;
        }
    }
    return TailClass::SubExponential;
}

std::pair<double, double> SeverityModel::support() const {
    switch (family_) {
        case SeverityFamily::GandH: return {-kInf, kInf};
        case SeverityFamily::GeneralizedPareto: {
            const double u = params_[0], theta = params_[1], xi = params_[2];
            return {u, xi < -kSmallShape ? u - theta / xi : kInf};
        }
        case SeverityFamily::SplicedLognGPD: {
            const double theta = params_[2], xi = params_[3], x_s = params_[4];
            return {0.0, xi < -kSmallShape ? x_s - theta / xi : kInf};
        }
        default: return {0.0, kInf};
    }
}

double threshold_probability(const SeverityModel& m, double tau) {
    if (family_embeds_threshold(m.family())) {
        const auto& p = m.params();
        if (tau <= 0.0) return 0.0;
        return norm_cdf((std::log(tau) - p[0]) / p[1]);
    }
    return m.cdf(tau);
}

double conditional_cdf(const SeverityModel& m, double tau, double x) {
    if (family_embeds_threshold(m.family())) return m.cdf(x);
    const double at_tau = m.cdf(tau);
    if (at_tau >= 1.0) return 1.0;
    return std::max(0.0, (m.cdf(x) - at_tau) / (1.0 - at_tau));
}

double conditional_quantile(const SeverityModel& m, double tau, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("conditional_quantile: p must lie in (0,1)");
    if (family_embeds_threshold(m.family())) return m.quantile(p);
    const double at_tau = m.cdf(tau);
    return m.quantile(at_tau + p * (1.0 - at_tau));
}

}  // namespace lda
