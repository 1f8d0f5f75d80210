#ifndef LDA_SEVERITY_GH_TRANSFORM_HPP
#define LDA_SEVERITY_GH_TRANSFORM_HPP

#include "lda/math/pchip.hpp"

namespace lda {

/// The g-and-h transformation A_{g,h}(z) = ((e^{gz}-1)/g) e^{hz^2/2} and its
/// numeric inverse. With h > 0 the map is strictly increasing on all of R but
/// has no closed-form inverse, so the inverse is built from a monotone cubic
/// interpolant over a fixed z-grid with a Newton polish, falling back to
/// bracketed root-finding beyond the grid.
class GhTransform {
public:
    /// Grid: 4001 equally spaced z values on [-8, 8].
    GhTransform(double g, double h);

    double g() const { return g_; }
    double h() const { return h_; }

    /// A_{g,h}(z); the g -> 0 limit z e^{hz^2/2} is used when |g| < 1e-8.
    double forward(double z) const;

    /// dA/dz, strictly positive for h > 0.
    double derivative(double z) const;

    /// The unique z with A_{g,h}(z) = y, to |A(z) - y| <= 1e-8 * max(1, |y|).
    double inverse(double y) const;

    /// False when the grid overflowed (extreme g or h); such parameter
    /// vectors are numerically unusable and callers should reject them.
    bool usable() const { return usable_; }

    double grid_y_min() const { return y_lo_; }
    double grid_y_max() const { return y_hi_; }

private:
    double newton_polish(double z, double y) const;

    double g_ = 0.0;
    double h_ = 0.0;
    bool small_g_ = false;
    bool usable_ = false;
    double y_lo_ = 0.0;
    double y_hi_ = 0.0;
    PchipInterpolant inverse_grid_;  // y -> z
};

}  // namespace lda

#endif
