#pragma once

#include "interval_lab/credible.hpp"
#include "interval_lab/regression.hpp"
#include "interval_lab/spline.hpp"

#include <string>
#include <vector>

namespace interval_lab {

/// The (b, s) function pair defining J(b, s), stored by its values on
/// knots spanning [0, d]. b is extended as an odd function with b = 0 for
/// |x| >= d; s is extended as an even function with s = t(m) for |x| >= d.
class SplinePair {
public:
    SplinePair() = default;
    /// b_values must start and end with 0, s_values must end with t(m).
    SplinePair(double d, std::vector<double> knots, std::vector<double> b_values,
               std::vector<double> s_values, int m, double alpha, double rho);

    /// b = 0 and s = t(m): the standard interval I.
    static SplinePair standard(double d, std::vector<double> knots, int m, double alpha,
                               double rho);

    double b(double x) const;
    double s(double x) const;

    double d() const { return d_; }
    int m() const { return m_; }
    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double t_m() const { return t_m_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& b_values() const { return b_values_; }
    const std::vector<double>& s_values() const { return s_values_; }
    const NaturalCubicSpline& b_spline() const { return b_spline_; }
    const NaturalCubicSpline& s_spline() const { return s_spline_; }

private:
    double d_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> b_values_;
    std::vector<double> s_values_;
    int m_ = 1;
    double alpha_ = 0.05;
    double rho_ = 0.0;
    double t_m_ = 0.0;
    NaturalCubicSpline b_spline_;
    NaturalCubicSpline s_spline_;
};

double eval_b(const SplinePair& sp, double x);
double eval_s(const SplinePair& sp, double x);

/// J(b, s) = [theta_hat - sigma_hat (b(r) + s(r)), theta_hat - sigma_hat (b(r) - s(r))].
RealInterval kg_interval(const SufficientStats& stats, const SplinePair& sp);

/// Sorted nonnegative gamma values at which coverage is enforced or reported.
struct GammaGrid {
    std::vector<double> points;

    static GammaGrid uniform(double max, double step);
};

/// Density of W = sigma_hat / sigma when m W^2 ~ chi^2_m.
double chi_scaled_pdf(double w, int m);
/// E[W] = sqrt(2/m) Gamma((m+1)/2) / Gamma(m/2).
double chi_scaled_mean(int m);
/// Interval [lo, hi] outside which the W density has mass below ~1e-16.
std::pair<double, double> chi_scaled_support(int m);

struct QuadratureReport {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// P(theta in J(b, s)) as a function of gamma = tau / sigma by nested
/// adaptive Gauss-Kronrod quadrature over (tau_hat/sigma, sigma_hat/sigma).
QuadratureReport coverage_probability_report(double gamma, const SplinePair& sp,
                                             double tol = 1e-9);
double coverage_probability(double gamma, const SplinePair& sp);

/// e(gamma; s) = E[length J] / E[length I].
QuadratureReport scaled_expected_length_report(double gamma, const SplinePair& sp,
                                               double tol = 1e-10);
double scaled_expected_length(double gamma, const SplinePair& sp);

} // namespace interval_lab
