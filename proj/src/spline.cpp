#include "interval_lab/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace interval_lab {

namespace {

// Second derivatives of the natural spline through (x, y); Thomas algorithm.
std::vector<double> natural_second_derivatives(const std::vector<double>& x,
                                               const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double h0 = x[i + 1] - x[i];
        const double h1 = x[i + 2] - x[i + 1];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
    }
    for (std::size_t i = 1; i < k; ++i) {
        const double lower = x[i + 1] - x[i];
        const double f = lower / diag[i - 1];
        diag[i] -= f * upper[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
        m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
    return m;
}

} // namespace

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() < 2 || knots_.size() != values_.size()) {
        throw std::invalid_argument("spline: need >= 2 knots and one value per knot");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] > knots_[i - 1])) {
            throw std::invalid_argument("spline: knots must be strictly ascending");
        }
    }
    second_ = natural_second_derivatives(knots_, values_);
}

std::size_t NaturalCubicSpline::segment(double x) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    return std::clamp<std::size_t>(idx, 1, knots_.size() - 1) - 1;
}

double NaturalCubicSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = knots_[i + 1] - knots_[i];
    const double a = (knots_[i + 1] - x) / h;
    const double b = (x - knots_[i]) / h;
    return a * values_[i] + b * values_[i + 1] +
           ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = knots_[i + 1] - knots_[i];
    const double a = (knots_[i + 1] - x) / h;
    const double b = (x - knots_[i]) / h;
    return (values_[i + 1] - values_[i]) / h +
           (-(3.0 * a * a - 1.0) * second_[i] + (3.0 * b * b - 1.0) * second_[i + 1]) * h / 6.0;
}

std::vector<double> NaturalCubicSpline::cardinal_weights(double x) const {
    const std::size_t n = knots_.size();
    std::vector<double> w(n);
    std::vector<double> unit(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = 1.0;
        w[j] = NaturalCubicSpline(knots_, unit)(x);
        unit[j] = 0.0;
    }
    return w;
}

double NaturalCubicSpline::integral() const {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double h = knots_[i + 1] - knots_[i];
        sum += 0.5 * h * (values_[i] + values_[i + 1]) -
               h * h * h * (second_[i] + second_[i + 1]) / 24.0;
    }
    return sum;
}

} // namespace interval_lab
