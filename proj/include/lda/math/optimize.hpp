#ifndef LDA_MATH_OPTIMIZE_HPP
#define LDA_MATH_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace lda {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct OptimOptions {
    double tol_obj = 1e-10;      // relative objective spread / change
    double tol_step = 1e-8;      // simplex diameter / step norm
    int max_iter = 2000;
    double initial_step = 0.25;  // simplex edge per coordinate
};

struct OptimResult {
    std::vector<double> x;
    double fmin = 0.0;
    bool converged = false;   // stopping tolerance met before the iteration cap
    int iterations = 0;
    int evaluations = 0;
};

/// Nelder-Mead simplex minimization. Non-finite objective values are treated
/// as +infinity, so the simplex retreats from invalid parameter regions.
OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0,
                        const OptimOptions& opts = {});

/// Central-difference gradient of f at x.
std::vector<double> numeric_gradient(const ObjectiveFn& f, const std::vector<double>& x,
                                     double rel_step = 1e-6);

/// BFGS with numeric gradients and backtracking line search. Refines a point
/// that is already close to a minimum; returns the input if no improvement.
OptimResult bfgs_polish(const ObjectiveFn& f, const std::vector<double>& x0,
                        int max_iter = 200, double grad_tol = 1e-8);

}  // namespace lda

#endif
