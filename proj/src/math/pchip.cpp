#include "lda/math/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lda {

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("pchip: need at least two matching nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("pchip: abscissae must be strictly increasing");

    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
        return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double hkm1 = x_[k] - x_[k - 1];
        const double hk = x_[k + 1] - x_[k];
        const double dkm1 = (y_[k] - y_[k - 1]) / hkm1;
        const double dk = (y_[k + 1] - y_[k]) / hk;
        if ((dk > 0 && dkm1 < 0) || (dk < 0 && dkm1 > 0) || dk == 0 || dkm1 == 0) {
            slope_[k] = 0.0;
        } else {
            // Weighted harmonic mean keeps the interpolant monotone.
            const double w1 = 2 * hk + hkm1;
            const double w2 = hk + 2 * hkm1;
            slope_[k] = (w1 + w2) / (w1 / dkm1 + w2 / dk);
        }
    }
    // One-sided secants at the ends; secant slopes preserve monotonicity.
    slope_[0] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    slope_[n - 1] = (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
}

std::size_t PchipInterpolant::segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double PchipInterpolant::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

double PchipInterpolant::derivative(double x) const {
    if (x <= x_.front()) return slope_.front();
    if (x >= x_.back()) return slope_.back();
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6 * t2 - 6 * t) / h;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = (-6 * t2 + 6 * t) / h;
    const double dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[i] + dh10 * slope_[i] + dh01 * y_[i + 1] + dh11 * slope_[i + 1];
}

}  // namespace lda
