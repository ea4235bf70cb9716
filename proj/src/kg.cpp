#include "interval_lab/kg.hpp"

#include "interval_lab/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace interval_lab {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kHalfWindow = 8.0;  // H integrated over gamma +/- 8 sd
constexpr unsigned kMaxDepth = 18;

void check_pair(double d, const std::vector<double>& knots, const std::vector<double>& b,
                const std::vector<double>& s, int m, double alpha, double rho) {
    if (!(d > 0.0)) throw std::invalid_argument("spline pair: d must be positive");
    if (knots.size() < 2) throw std::invalid_argument("spline pair: need at least 2 knots");
    if (knots.front() != 0.0 || knots.back() != d) {
        throw std::invalid_argument("spline pair: knots must start at 0 and end at d");
    }
    if (b.size() != knots.size() || s.size() != knots.size()) {
        throw std::invalid_argument("spline pair: need one b and one s value per knot");
    }
    if (b.front() != 0.0 || b.back() != 0.0) {
        throw std::invalid_argument("spline pair: b must vanish at 0 and at d");
    }
    if (m < 1) throw std::invalid_argument("spline pair: m must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("spline pair: bad alpha");
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("spline pair: |rho| must be < 1");
    for (double v : s) {
        if (!(v > 0.0)) throw std::invalid_argument("spline pair: s values must be positive");
    }
}

// Integrate f over [a, b] split at the given interior breakpoints, to absolute error tol.
template <class F>
QuadratureReport integrate_pieces(F&& f, double a, double b, std::vector<double> breaks,
                                  double tol) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    QuadratureReport out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = std::max(a, breaks[i]);
        const double hi = std::min(b, breaks[i + 1]);
        if (!(hi > lo)) continue;
        double err = 0.0;
        double l1 = 0.0;
        const double rough = gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &err, &l1);
        if (l1 < 1e-3 * tol || err < 1e-3 * tol) {
            out.value += rough;
            out.error_estimate += err;
            continue;
        }
        const double rel = std::max(tol / l1, 4.0 * std::numeric_limits<double>::epsilon());
        out.value += gauss_kronrod<double, 15>::integrate(f, lo, hi, kMaxDepth, rel, &err);
        out.error_estimate += err;
    }
    return out;
}

std::vector<double> h_breaks(const SplinePair& sp, double w, double lo, double hi) {
    std::vector<double> out;
    for (double k : sp.knots()) {
        for (double sign : {-1.0, 1.0}) {
            const double h = sign * w * k;
            if (h > lo && h < hi) out.push_back(h);
        }
    }
    return out;
}

} // namespace

SplinePair::SplinePair(double d, std::vector<double> knots, std::vector<double> b_values,
                       std::vector<double> s_values, int m, double alpha, double rho)
    : d_(d), knots_(std::move(knots)), b_values_(std::move(b_values)),
      s_values_(std::move(s_values)), m_(m), alpha_(alpha), rho_(rho) {
    check_pair(d_, knots_, b_values_, s_values_, m_, alpha_, rho_);
    t_m_ = two_sided_t(alpha_, m_);
    if (std::abs(s_values_.back() - t_m_) > 1e-12 * t_m_) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "spline pair: s(d) must equal t(m) = " << t_m_ << ", got " << s_values_.back();
        throw std::invalid_argument(msg.str());
    }
    s_values_.back() = t_m_;
    b_spline_ = NaturalCubicSpline(knots_, b_values_);
    s_spline_ = NaturalCubicSpline(knots_, s_values_);
}

SplinePair SplinePair::standard(double d, std::vector<double> knots, int m, double alpha,
                                double rho) {
    const std::size_t n = knots.size();
    return SplinePair(d, std::move(knots), std::vector<double>(n, 0.0),
                      std::vector<double>(n, two_sided_t(alpha, m)), m, alpha, rho);
}

double SplinePair::b(double x) const {
    const double ax = std::abs(x);
    if (ax >= d_) return 0.0;
    const double v = b_spline_(ax);
    return x < 0.0 ? -v : v;
}

double SplinePair::s(double x) const {
    const double ax = std::abs(x);
    if (ax >= d_) return t_m_;
    return s_spline_(ax);
}

double eval_b(const SplinePair& sp, double x) { return sp.b(x); }
double eval_s(const SplinePair& sp, double x) { return sp.s(x); }

RealInterval kg_interval(const SufficientStats& stats, const SplinePair& sp) {
    if (stats.m != sp.m()) {
        throw std::invalid_argument("kg_interval: data m = " + std::to_string(stats.m) +
                                    " does not match spline m = " + std::to_string(sp.m()));
    }
    if (!(stats.sigma_hat > 0.0)) throw std::domain_error("kg_interval: sigma_hat must be > 0");
    const double r = stats.r();
    const double centre = stats.theta_hat - stats.sigma_hat * sp.b(r);
    const double half = stats.sigma_hat * sp.s(r);
    return {centre - half, centre + half};
}

GammaGrid GammaGrid::uniform(double max, double step) {
    if (!(max >= 0.0) || !(step > 0.0)) throw std::invalid_argument("gamma grid: bad range");
    GammaGrid grid;
    const auto n = static_cast<long>(std::floor(max / step + 1e-9));
    for (long i = 0; i <= n; ++i) grid.points.push_back(static_cast<double>(i) * step);
    return grid;
}

double chi_scaled_pdf(double w, int m) {
    if (w <= 0.0) return 0.0;
    const double md = m;
    const double log_c = std::log(2.0) + 0.5 * md * std::log(0.5 * md) - std::lgamma(0.5 * md);
    return std::exp(log_c + (md - 1.0) * std::log(w) - 0.5 * md * w * w);
}

double chi_scaled_mean(int m) {
    const double md = m;
    return std::sqrt(2.0 / md) * std::exp(std::lgamma(0.5 * (md + 1.0)) - std::lgamma(0.5 * md));
}

std::pair<double, double> chi_scaled_support(int m) {
    const double a = 0.5 * m;
    const double lo = std::sqrt(2.0 * boost::math::gamma_p_inv(a, 1e-17) / m);
    const double hi = std::sqrt(2.0 * boost::math::gamma_q_inv(a, 1e-17) / m);
    return {lo, hi};
}

QuadratureReport coverage_probability_report(double gamma, const SplinePair& sp, double tol) {
    const double rho = sp.rho();
    const double sr = std::sqrt(1.0 - rho * rho);
    const auto [w_lo, w_hi] = chi_scaled_support(sp.m());
    double inner_err = 0.0;

    auto inner = [&](double w) {
        const double h_lo = gamma - kHalfWindow;
        const double h_hi = gamma + kHalfWindow;
        auto integrand = [&](double h) {
            const double x = h / w;
            const double b = sp.b(x);
            const double s = sp.s(x);
            const double shift = rho * (h - gamma);
            return (normal_cdf((w * (b + s) - shift) / sr) -
                    normal_cdf((w * (b - s) - shift) / sr)) *
                   normal_pdf(h - gamma);
        };
        const QuadratureReport r =
            integrate_pieces(integrand, h_lo, h_hi, h_breaks(sp, w, h_lo, h_hi), 0.1 * tol);
        inner_err = std::max(inner_err, r.error_estimate);
        return chi_scaled_pdf(w, sp.m()) * r.value;
    };
    double err = 0.0;
    QuadratureReport out;
    out.value = gauss_kronrod<double, 15>::integrate(inner, w_lo, w_hi, kMaxDepth, tol, &err);
    out.error_estimate = err + inner_err;
    return out;
}

double coverage_probability(double gamma, const SplinePair& sp) {
    const QuadratureReport r = coverage_probability_report(gamma, sp);
    if (!(r.error_estimate < 1e-6)) {
        std::ostringstream msg;
        msg << "coverage quadrature did not converge at gamma = " << gamma
            << " (error estimate " << r.error_estimate << ")";
        throw SolverError(msg.str());
    }
    return r.value;
}

QuadratureReport scaled_expected_length_report(double gamma, const SplinePair& sp, double tol) {
    const auto [w_lo, w_hi] = chi_scaled_support(sp.m());
    double inner_err = 0.0;
    auto inner = [&](double w) {
        const double h_lo = gamma - kHalfWindow;
        const double h_hi = gamma + kHalfWindow;
        auto integrand = [&](double h) { return sp.s(h / w) * normal_pdf(h - gamma); };
        const QuadratureReport r =
            integrate_pieces(integrand, h_lo, h_hi, h_breaks(sp, w, h_lo, h_hi), 0.1 * tol);
        inner_err = std::max(inner_err, r.error_estimate);
        return chi_scaled_pdf(w, sp.m()) * w * r.value;
    };
    double err = 0.0;
    const double num =
        gauss_kronrod<double, 15>::integrate(inner, w_lo, w_hi, kMaxDepth, tol, &err);
    const double denom = sp.t_m() * chi_scaled_mean(sp.m());
    return {num / denom, (err + inner_err) / denom};
}

double scaled_expected_length(double gamma, const SplinePair& sp) {
    const QuadratureReport r = scaled_expected_length_report(gamma, sp);
    if (!(r.error_estimate < 1e-7)) {
        std::ostringstream msg;
        msg << "expected-length quadrature did not converge at gamma = " << gamma
            << " (error estimate " << r.error_estimate << ")";
        throw SolverError(msg.str());
    }
    return r.value;
}

} // namespace interval_lab
