#include "lda/math/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lda {

namespace {

constexpr double kHuge = 1e300;

double guarded(const ObjectiveFn& f, const std::vector<double>& x, int& evals) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : kHuge;
}

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            d = std::max(d, std::fabs(pts[i][j] - pts[0][j]));
    return d;
}

}  // namespace

OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const OptimOptions& opts) {
    const std::size_t n = x0.size();
    int evals = 0;

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double step = opts.initial_step;
        if (pts[i + 1][i] == 0.0) step = opts.initial_step * 0.5;
        pts[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) fv[i] = guarded(f, pts[i], evals);

    OptimResult res;
    int iter = 0;
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::size_t> order(n + 1);
    while (iter < opts.max_iter) {
        ++iter;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> p2(n + 1);
            std::vector<double> f2(n + 1);
            for (std::size_t i = 0; i <= n; ++i) { p2[i] = pts[order[i]]; f2[i] = fv[order[i]]; }
            pts.swap(p2);
            fv.swap(f2);
        }

        const double spread = std::fabs(fv[n] - fv[0]);
        const double scale = 1.0 + std::fabs(fv[0]);
        if (spread <= opts.tol_obj * scale && simplex_diameter(pts) <= opts.tol_step) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / double(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (centroid[j] - pts[n][j]);
            return p;
        };

        std::vector<double> xr = blend(alpha);
        const double fr = guarded(f, xr, evals);
        if (fr < fv[0]) {
            std::vector<double> xe = blend(gamma);
            const double fe = guarded(f, xe, evals);
            if (fe < fr) { pts[n] = std::move(xe); fv[n] = fe; }
            else         { pts[n] = std::move(xr); fv[n] = fr; }
        } else if (fr < fv[n - 1]) {
            pts[n] = std::move(xr); fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? rho : -rho);
            const double fc = guarded(f, xc, evals);
            if (fc < std::min(fr, fv[n])) {
                pts[n] = std::move(xc); fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + sigma * (pts[i][j] - pts[0][j]);
                    fv[i] = guarded(f, pts[i], evals);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.fmin = fv[best];
    res.iterations = iter;
    res.evaluations = evals;
    return res;
}

std::vector<double> numeric_gradient(const ObjectiveFn& f, const std::vector<double>& x,
                                     double rel_step) {
    const std::size_t n = x.size();
    std::vector<double> g(n), xp = x;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = rel_step * (1.0 + std::fabs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        g[i] = (std::isfinite(fp) && std::isfinite(fm)) ? (fp - fm) / (2.0 * h)
                                                        : std::numeric_limits<double>::quiet_NaN();
    }
    return g;
}

OptimResult bfgs_polish(const ObjectiveFn& f, const std::vector<double>& x0,
                        int max_iter, double grad_tol) {
    const std::size_t n = x0.size();
    int evals = 0;
    OptimResult res;
    res.x = x0;
    res.fmin = guarded(f, x0, evals);

    // Inverse Hessian approximation, started at identity.
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;

    std::vector<double> x = x0;
    double fx = res.fmin;
    std::vector<double> g = numeric_gradient(f, x);
    evals += int(2 * n);
    for (double gv : g)
        if (!std::isfinite(gv)) { res.evaluations = evals; return res; }

    for (int iter = 0; iter < max_iter; ++iter) {
        double gnorm = 0.0;
        for (double gv : g) gnorm = std::max(gnorm, std::fabs(gv));
        if (gnorm <= grad_tol * (1.0 + std::fabs(fx))) { res.converged = true; break; }

        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] -= H[i][j] * g[j];

        double slope = std::inner_product(p.begin(), p.end(), g.begin(), 0.0);
        if (!(slope < 0.0)) {  // reset to steepest descent
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                p[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
            if (slope == 0.0) { res.converged = true; break; }
        }

        double t = 1.0;
        std::vector<double> xn(n);
        double fn = kHuge;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + t * p[i];
            fn = guarded(f, xn, evals);
            if (fn <= fx + 1e-4 * t * slope) { accepted = true; break; }
            t *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> gn = numeric_gradient(f, xn);
        evals += int(2 * n);
        bool bad = false;
        for (double gv : gn)
            if (!std::isfinite(gv)) bad = true;
        if (bad) { x = xn; fx = fn; break; }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) { s[i] = xn[i] - x[i]; y[i] = gn[i] - g[i]; }
        const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy > 1e-12) {
            const double rho_ = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i][j] * y[j];
            const double yHy = std::inner_product(y.begin(), y.end(), Hy.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] += (1.0 + rho_ * yHy) * rho_ * s[i] * s[j]
                             - rho_ * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
        x = xn;
        fx = fn;
        g = gn;
        res.iterations = iter + 1;
    }

    if (fx < res.fmin) { res.x = x; res.fmin = fx; }
    res.evaluations = evals;
    return res;
}

}  // namespace lda
