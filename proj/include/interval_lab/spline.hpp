#pragma once

#include <span>
#include <vector>

namespace interval_lab {

/// Natural cubic spline interpolant (zero second derivative at both ends)
/// through (knots[i], values[i]). Knots must be strictly ascending.
class NaturalCubicSpline {
public:
    NaturalCubicSpline() = default;
    NaturalCubicSpline(std::vector<double> knots, std::vector<double> values);

    double operator()(double x) const;
    double derivative(double x) const;

    /// Weights w with spline(x) = sum_i w[i] * values[i]; the interpolant is
    /// linear in the knot values.
    std::vector<double> cardinal_weights(double x) const;

    /// Exact integral over [knots.front(), knots.back()].
    double integral() const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t segment(double x) const;

    std::vector<double> knots_;
    std::vector<double> values_;
    std::vector<double> second_;  // second derivatives at knots
};

} // namespace interval_lab
