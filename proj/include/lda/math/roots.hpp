#ifndef LDA_MATH_ROOTS_HPP
#define LDA_MATH_ROOTS_HPP

#include <functional>

namespace lda {

struct BracketResult {
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
};

/// Expands [lo, hi] geometrically about its center until f changes sign.
BracketResult expand_bracket(const std::function<double(double)>& f,
                             double lo, double hi, int max_doublings = 80);

/// Brent's method on a sign-changing bracket. Tolerance is on the abscissa.
double brent_root(const std::function<double(double)>& f,
                  double lo, double hi, double xtol = 1e-13, int max_iter = 200);

}  // namespace lda

#endif
