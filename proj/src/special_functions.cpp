#include "interval_lab/special_functions.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace interval_lab {

namespace {

void check_dof(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw std::domain_error("t distribution: degrees of freedom must be positive, got " +
                                std::to_string(q));
    }
}

// log of the t_q normalizing constant Gamma((q+1)/2) / (Gamma(q/2) sqrt(q pi)).
double log_t_norm(double q) {
    return std::lgamma(0.5 * (q + 1.0)) - std::lgamma(0.5 * q) -
           0.5 * std::log(q * std::numbers::pi);
}

// Lower-tail probability for x <= 0, computed without cancellation.
double lower_tail(double x, double q) {
    const double x2 = x * x;
    if (x2 < q) {
        // Central part 0.5 * I_{x^2/(q+x^2)}(1/2, q/2) is small and accurate here.
        const double central = 0.5 * boost::math::ibeta(0.5, 0.5 * q, x2 / (q + x2));
        return 0.5 - central;
    }
    return 0.5 * boost::math::ibeta(0.5 * q, 0.5, q / (q + x2));
}

} // namespace

TDist::TDist(double dof) : dof_(dof) { check_dof(dof); }

double TDist::pdf(double x) const { return t_pdf(x, dof_); }
double TDist::cdf(double x) const { return t_cdf(x, dof_); }
double TDist::quantile(double p) const { return t_quantile(p, dof_); }

double t_pdf(double x, double q) {
    check_dof(q);
    if (std::isinf(x)) return 0.0;
    return std::exp(log_t_norm(q) - 0.5 * (q + 1.0) * std::log1p(x * x / q));
}

double t_pdf_derivative(double x, double q) {
    return -t_pdf(x, q) * (q + 1.0) * x / (q + x * x);
}

double t_cdf(double x, double q) {
    check_dof(q);
    if (std::isnan(x)) return x;
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    if (x <= 0.0) return lower_tail(x, q);
    return 1.0 - lower_tail(-x, q);
}

double t_quantile(double p, double q) {
    check_dof(q);
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("t_quantile: probability must lie in (0, 1), got " +
                                std::to_string(p));
    }
    if (p == 0.5) return 0.0;
    // Solve in the lower half and reflect; the lower tail is computed accurately.
    const bool upper = p > 0.5;
    const double target = upper ? 1.0 - p : p;

    // Bracket [lo, hi] with F(lo) <= target < F(hi) and hi <= 0.
    double hi = 0.0;
    double lo = -1.0;
    while (lower_tail(lo, q) > target) {
        hi = lo;
        lo *= 2.0;
        if (!std::isfinite(lo)) throw std::runtime_error("t_quantile: bracket overflow");
    }

    // Start from the normal approximation clipped into the bracket.
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = lower_tail(x, q) - target;
        if (f == 0.0) break;
        if (f > 0.0) hi = x; else lo = x;
        const double dens = t_pdf(x, q);
        double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo)) {
            break;
        }
    }
    return upper ? -x : x;
}

double two_sided_t(double alpha, double q) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("two_sided_t: alpha must lie in (0, 1)");
    }
    return t_quantile(1.0 - 0.5 * alpha, q);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace interval_lab
