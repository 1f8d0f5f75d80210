#ifndef LDA_MATH_PCHIP_HPP
#define LDA_MATH_PCHIP_HPP

#include <cstddef>
#include <vector>

namespace lda {

/// Monotone piecewise cubic Hermite interpolant (Fritsch-Carlson slopes).
/// For monotone node data the interpolant is monotone on every segment.
/// Evaluation outside [x.front(), x.back()] clamps to the endpoint values.
class PchipInterpolant {
public:
    PchipInterpolant() = default;
    PchipInterpolant(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    std::size_t size() const { return x_.size(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

}  // namespace lda

#endif
