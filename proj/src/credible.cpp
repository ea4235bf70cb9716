#include "interval_lab/credible.hpp"

#include "interval_lab/special_functions.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace interval_lab {

namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

template <class F>
double solve_bracketed(F&& f, double lo, double hi, double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t max_iter = 300;
    const auto [a, b] = toms748_solve(f, lo, hi, flo, fhi, eps_tolerance<double>(52), max_iter);
    return 0.5 * (a + b);
}

struct StdComponent {
    double weight;
    double loc;
    double scale;
    double dof;
};

// Components of the mixture in the standardized coordinate w.
std::pair<StdComponent, StdComponent> standardized(const PosteriorMixture& mix) {
    return {StdComponent{mix.weight_spike, (mix.spike.location - mix.centre) / mix.unit,
                         mix.spike.scale / mix.unit, mix.spike.dof},
            StdComponent{1.0 - mix.weight_spike, (mix.slab.location - mix.centre) / mix.unit,
                         mix.slab.scale / mix.unit, mix.slab.dof}};
}

// Standardized w solving F(w) = target, with F the posterior CDF in w.
double solve_standardized(const PosteriorMixture& mix, double target) {
    if (!(target > 0.0 && target < 1.0)) {
        throw std::domain_error("credible quantile: probability must lie in (0, 1)");
    }
    const auto [c1, c2] = standardized(mix);
    // The mixture quantile lies between the smallest and largest component quantiles.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const StdComponent& c : {c1, c2}) {
        if (c.weight <= 0.0) continue;
        const double q = c.loc + c.scale * t_quantile(target, c.dof);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    auto f = [&](double w) { return standardized_cdf(mix, w) - target; };
    double flo = f(lo);
    double fhi = f(hi);
    // Rounding can leave the exact bracket marginally off; widen and retry.
    double width = std::max(hi - lo, 1e-8 * std::max(1.0, std::abs(lo)));
    for (int attempt = 0; flo > 0.0 && attempt < 60; ++attempt, width *= 2.0) {
        hi = lo;
        fhi = flo;
        lo -= width;
        flo = f(lo);
    }
    for (int attempt = 0; fhi < 0.0 && attempt < 60; ++attempt, width *= 2.0) {
        lo = hi;
        flo = fhi;
        hi += width;
        fhi = f(hi);
    }
    if (flo > 0.0 || fhi < 0.0) {
        std::ostringstream msg;
        msg << "credible quantile: failed to bracket root for target " << target << " in [" << lo
            << ", " << hi << "]";
        throw SolverError(msg.str());
    }
    if (lo == hi) return lo;
    return solve_bracketed(f, lo, hi, flo, fhi);
}

double standardized_length(const PosteriorMixture& mix, double alpha, double eta) {
    return solve_standardized(mix, 1.0 - (alpha - eta)) - solve_standardized(mix, eta);
}

} // namespace

double IntervalSet::total_length() const {
    double sum = 0.0;
    for (const auto& iv : intervals) sum += iv.length();
    return sum;
}

double lower_quantile(const PosteriorMixture& mix, double eta) {
    return mix.centre + mix.unit * solve_standardized(mix, eta);
}

double upper_quantile(const PosteriorMixture& mix, double delta) {
    return mix.centre + mix.unit * solve_standardized(mix, 1.0 - delta);
}

RealInterval equi_tailed(const PosteriorMixture& mix, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    return {lower_quantile(mix, 0.5 * alpha), upper_quantile(mix, 0.5 * alpha)};
}

ShortestResult shortest(const PosteriorMixture& mix, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    const double lo = 1e-9 * alpha;
    const double hi = alpha * (1.0 - 1e-9);
    auto length = [&](double eta) { return standardized_length(mix, alpha, eta); };

    // Coarse grid first: the length need not be unimodal in eta.
    constexpr int kGrid = 48;
    std::vector<double> etas(kGrid + 1);
    std::vector<double> lens(kGrid + 1);
    std::size_t best = 0;
    for (int i = 0; i <= kGrid; ++i) {
        const auto k = static_cast<std::size_t>(i);
        etas[k] = lo + (hi - lo) * i / kGrid;
        lens[k] = length(etas[k]);
        if (lens[k] < lens[best]) best = k;
    }
    const double a = etas[best == 0 ? 0 : best - 1];
    const double b = etas[std::min<std::size_t>(best + 1, kGrid)];
    std::uintmax_t max_iter = 200;
    auto [eta_star, len_star] =
        boost::math::tools::brent_find_minima(length, a, b, 40, max_iter);
    if (lens[best] < len_star) {
        eta_star = etas[best];
        len_star = lens[best];
    }
    // Polish on the first-order condition pdf(lower) = pdf(upper).
    auto balance = [&](double eta) {
        return mix.pdf(lower_quantile(mix, eta)) - mix.pdf(upper_quantile(mix, alpha - eta));
    };
    for (double delta = 1e-6 * alpha; delta <= b - a; delta *= 8.0) {
        const double l = std::max(a, eta_star - delta);
        const double u = std::min(b, eta_star + delta);
        const double fl = balance(l);
        const double fu = balance(u);
        if ((fl < 0.0) == (fu < 0.0)) continue;
        std::uintmax_t it = 100;
        const auto root = boost::math::tools::toms748_solve(
            balance, l, u, fl, fu, boost::math::tools::eps_tolerance<double>(52), it);
        const double eta = 0.5 * (root.first + root.second);
        const double len = length(eta);
        if (len <= len_star * (1.0 + 1e-12)) {
            eta_star = eta;
            len_star = len;
        }
        break;
    }
    // The equi-tailed split is always a candidate.
    const double len_equi = length(0.5 * alpha);
    if (len_equi <= len_star) {
        eta_star = 0.5 * alpha;
        len_star = len_equi;
    }

    ShortestResult out;
    out.eta = eta_star;
    out.interval = {lower_quantile(mix, eta_star), upper_quantile(mix, alpha - eta_star)};
    out.boundary_limit = (eta_star - lo) <= 1e-6 * alpha || (hi - eta_star) <= 1e-6 * alpha;
    return out;
}

std::vector<CriticalPoint> density_critical_points(const PosteriorMixture& mix) {
    std::vector<double> locs;
    double min_scale = std::numeric_limits<double>::infinity();
    if (mix.weight_spike > 0.0) {
        locs.push_back(mix.spike.location);
        min_scale = std::min(min_scale, mix.spike.scale);
    }
    if (mix.weight_spike < 1.0) {
        locs.push_back(mix.slab.location);
        min_scale = std::min(min_scale, mix.slab.scale);
    }
    const double left = *std::min_element(locs.begin(), locs.end());
    const double right = *std::max_element(locs.begin(), locs.end());
    if (right - left <= 1e-14 * std::max(1.0, std::abs(left))) {
        return {CriticalPoint{left, true}};
    }

    // Outside [left, right] both components decrease away from the hull, so
    // every critical point lies inside it.
    const double span = right - left;
    const int n = static_cast<int>(std::clamp(100.0 * span / min_scale, 400.0, 40000.0));
    auto deriv = [&](double x) { return mix.pdf_derivative(x); };

    std::vector<CriticalPoint> out;
    double x_prev = left;
    double d_prev = deriv(left);
    if (d_prev == 0.0) out.push_back({left, true});
    for (int i = 1; i <= n; ++i) {
        const double x = i == n ? right : left + span * i / n;
        const double d = deriv(x);
        if (d_prev != 0.0 && d != 0.0 && (d_prev > 0.0) != (d > 0.0)) {
            const double root = solve_bracketed(deriv, x_prev, x, d_prev, d);
            out.push_back({root, d_prev > 0.0});
        } else if (d == 0.0 && i < n) {
            out.push_back({x, d_prev > 0.0});
        }
        x_prev = x;
        d_prev = d;
    }
    // The endpoints are locations of components; a component mode can sit
    // exactly on the hull edge when the other component is negligible there.
    if (out.empty()) {
        out.push_back({mix.pdf(left) >= mix.pdf(right) ? left : right, true});
    } else {
        if (!out.front().is_max) out.insert(out.begin(), CriticalPoint{left, true});
        if (!out.back().is_max) out.push_back(CriticalPoint{right, true});
    }
    return out;
}

namespace {

IntervalSet super_level_set(const PosteriorMixture& mix, const std::vector<CriticalPoint>& crit,
                            double level, double outer_step) {
    auto g = [&](double x) { return mix.pdf(x) - level; };
    std::vector<double> crossings;

    // Left tail.
    {
        const double x0 = crit.front().x;
        const double g0 = g(x0);
        if (g0 > 0.0) {
            double step = outer_step;
            double x1 = x0 - step;
            double g1 = g(x1);
            double xr = x0;
            double gr = g0;
            while (g1 > 0.0) {
                xr = x1;
                gr = g1;
                step *= 2.0;
                x1 = x0 - step;
                g1 = g(x1);
            }
            crossings.push_back(solve_bracketed(g, x1, xr, g1, gr));
        }
    }
    for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
        const double a = crit[i].x;
        const double b = crit[i + 1].x;
        const double ga = g(a);
        const double gb = g(b);
        if ((ga > 0.0) != (gb > 0.0) && ga != 0.0 && gb != 0.0) {
            crossings.push_back(solve_bracketed(g, a, b, ga, gb));
        }
    }
    // Right tail.
    {
        const double x0 = crit.back().x;
        const double g0 = g(x0);
        if (g0 > 0.0) {
            double step = outer_step;
            double x1 = x0 + step;
            double g1 = g(x1);
            double xl = x0;
            double gl = g0;
            while (g1 > 0.0) {
                xl = x1;
                gl = g1;
                step *= 2.0;
                x1 = x0 + step;
                g1 = g(x1);
            }
            crossings.push_back(solve_bracketed(g, xl, x1, gl, g1));
        }
    }
    std::sort(crossings.begin(), crossings.end());
    IntervalSet set;
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
        set.intervals.push_back({crossings[i], crossings[i + 1]});
    }
    return set;
}

double set_mass(const PosteriorMixture& mix, const IntervalSet& set) {
    double mass = 0.0;
    for (const auto& iv : set.intervals) mass += mix.cdf(iv.upper) - mix.cdf(iv.lower);
    return mass;
}

} // namespace

HpdResult hpd(const PosteriorMixture& mix, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    const auto crit = density_critical_points(mix);
    double peak = 0.0;
    for (const auto& c : crit) {
        if (c.is_max) peak = std::max(peak, mix.pdf(c.x));
    }
    const double outer_step = std::max(mix.weight_spike > 0.0 ? mix.spike.scale : 0.0,
                                       mix.weight_spike < 1.0 ? mix.slab.scale : 0.0);
    const double target = 1.0 - alpha;

    // Mass of {pdf >= c} decreases continuously in c.
    double c_lo = 0.0;
    double c_hi = peak;
    HpdResult out;
    for (int iter = 0; iter < 200; ++iter) {
        const double c = 0.5 * (c_lo + c_hi);
        IntervalSet set = super_level_set(mix, crit, c, outer_step);
        const double mass = set_mass(mix, set);
        out = {std::move(set), c, mass};
        if (std::abs(mass - target) < 1e-12) break;
        if (mass > target) c_lo = c; else c_hi = c;
        if (c_hi - c_lo <= 1e-15 * peak) break;
    }
    if (out.set.intervals.size() > 2) {
        throw SolverError("hpd: more than two intervals found for a two-component mixture");
    }
    return out;
}

IntervalSet hpd_set(const PosteriorMixture& mix, double alpha) { return hpd(mix, alpha).set; }

ScaledSummary scaled_summary(const RealInterval& iv, const SufficientStats& stats) {
    if (!(stats.sigma_hat > 0.0)) throw std::domain_error("sigma_hat must be positive");
    const double up = (iv.upper - stats.theta_hat) / stats.sigma_hat;
    const double low = (iv.lower - stats.theta_hat) / stats.sigma_hat;
    return {0.5 * (up - low), 0.5 * (up + low)};
}

} // namespace interval_lab
