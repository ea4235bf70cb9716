#pragma once

// Student-t primitives used by every posterior and coverage computation.

namespace interval_lab {

/// Student-t distribution with q > 0 degrees of freedom (q need not be integral).
class TDist {
public:
    explicit TDist(double dof);

    double dof() const noexcept { return dof_; }
    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;

private:
    double dof_;
};

double t_pdf(double x, double q);
double t_cdf(double x, double q);

/// Inverse of t_cdf; safeguarded Newton iteration on a bisection bracket.
double t_quantile(double p, double q);

/// Two-sided quantile t(q) with P(-t(q) <= T <= t(q)) = 1 - alpha.
double two_sided_t(double alpha, double q);

/// d/dx of the t_q density.
double t_pdf_derivative(double x, double q);

double normal_pdf(double x);
double normal_cdf(double x);

} // namespace interval_lab
