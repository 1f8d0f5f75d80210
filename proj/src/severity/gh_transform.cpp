#include "lda/severity/gh_transform.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lda/math/roots.hpp"

namespace lda {

namespace {
constexpr int kGridPoints = 4001;
constexpr double kGridZMax = 8.0;   // covers all but ~6e-16 of normal mass
constexpr double kSmallG = 1e-8;    // series branch threshold for (e^{gz}-1)/g
}  // namespace

GhTransform::GhTransform(double g, double h) : g_(g), h_(h) {
    if (!(h > 0.0) || !std::isfinite(g) || !std::isfinite(h))
        throw std::invalid_argument("GhTransform: requires finite g and h > 0");
    small_g_ = std::fabs(g) < kSmallG;

    std::vector<double> zs(kGridPoints), ys(kGridPoints);
    const double dz = 2.0 * kGridZMax / (kGridPoints - 1);
    bool ok = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double z = -kGridZMax + i * dz;
        const double y = forward(z);
        if (!std::isfinite(y) || !(y > prev)) { ok = false; break; }
        zs[i] = z;
        ys[i] = y;
        prev = y;
    }
    usable_ = ok;
    if (!ok) return;
    y_lo_ = ys.front();
    y_hi_ = ys.back();
    inverse_grid_ = PchipInterpolant(std::move(ys), std::move(zs));
}

double GhTransform::forward(double z) const {
    const double growth = std::exp(0.5 * h_ * z * z);
    if (small_g_) return z * growth;
    return std::expm1(g_ * z) / g_ * growth;
}

double GhTransform::derivative(double z) const {
    const double growth = std::exp(0.5 * h_ * z * z);
    if (small_g_) return growth * (1.0 + h_ * z * z);
    return growth * (std::exp(g_ * z) + h_ * z * std::expm1(g_ * z) / g_);
}

double GhTransform::newton_polish(double z, double y) const {
    const double tol = 1e-8 * std::max(1.0, std::fabs(y));
    for (int i = 0; i < 8; ++i) {
        const double r = forward(z) - y;
        if (std::fabs(r) <= tol) return z;
        const double d = derivative(z);
        if (!(d > 0.0) || !std::isfinite(d)) break;
        const double step = r / d;
        z -= step;
        if (std::fabs(step) < 1e-16 * (1.0 + std::fabs(z))) break;
    }
    return z;
}

double GhTransform::inverse(double y) const {
    if (!usable_)
        throw std::domain_error("GhTransform: parameter grid is not usable");
    if (y >= y_lo_ && y <= y_hi_) {
        const double z = newton_polish(inverse_grid_(y), y);
        if (std::fabs(forward(z) - y) <= 1e-8 * std::max(1.0, std::fabs(y))) return z;
    }
    // Outside the grid (or a rare polish failure): bracketed root-finding.
    auto fn = [&](double z) { return forward(z) - y; };
    double lo, hi;
    if (y < y_lo_) { lo = -kGridZMax - 1.0; hi = -kGridZMax + 0.5; }
    else if (y > y_hi_) { lo = kGridZMax - 0.5; hi = kGridZMax + 1.0; }
    else { lo = inverse_grid_(y) - 0.5; hi = inverse_grid_(y) + 0.5; }
    const BracketResult br = expand_bracket(fn, lo, hi);
    if (!br.found)
        throw std::domain_error("GhTransform::inverse: failed to bracket target value");
    const double z = brent_root(fn, br.lo, br.hi, 1e-14);
    return newton_polish(z, y);
}

}  // namespace lda
