#include "lda/math/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace lda {

BracketResult expand_bracket(const std::function<double(double)>& f,
                             double lo, double hi, int max_doublings) {
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_doublings; ++i) {
        if (std::isfinite(flo) && std::isfinite(fhi) && flo * fhi <= 0.0)
            return {lo, hi, true};
        const double mid = 0.5 * (lo + hi);
        const double half = hi - mid;
        lo = mid - 2.0 * half;
        hi = mid + 2.0 * half;
        flo = f(lo);
        fhi = f(hi);
    }
    return {lo, hi, false};
}

double brent_root(const std::function<double(double)>& f,
                  double lo, double hi, double xtol, int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::invalid_argument("brent_root: endpoints do not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;

        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa;
            d = e = b - a;
        }
    }
    return b;
}

}  // namespace lda
