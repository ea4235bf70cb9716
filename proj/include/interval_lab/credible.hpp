#pragma once

#include "interval_lab/posterior.hpp"

#include <stdexcept>
#include <vector>

namespace interval_lab {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RealInterval {
    double lower = 0.0;
    double upper = 0.0;

    double length() const { return upper - lower; }
    double centre() const { return 0.5 * (lower + upper); }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Sorted, pairwise disjoint intervals.
struct IntervalSet {
    std::vector<RealInterval> intervals;

    double total_length() const;
};

struct ScaledSummary {
    double scaled_half_length = 0.0;
    double scaled_offset = 0.0;
};

/// Solution l of P(theta < l | data) = eta.
double lower_quantile(const PosteriorMixture& mix, double eta);
/// Solution u of P(theta > u | data) = delta.
double upper_quantile(const PosteriorMixture& mix, double delta);

RealInterval equi_tailed(const PosteriorMixture& mix, double alpha);

struct ShortestResult {
    RealInterval interval;
    double eta = 0.0;             // lower-tail probability at the optimum
    bool boundary_limit = false;  // optimum hit the edge of (0, alpha)
};

/// [l(eta*), u(alpha - eta*)] with eta* minimizing the length over (0, alpha).
ShortestResult shortest(const PosteriorMixture& mix, double alpha);

/// Critical points of the posterior density, ascending, with their kind.
struct CriticalPoint {
    double x = 0.0;
    bool is_max = false;
};
std::vector<CriticalPoint> density_critical_points(const PosteriorMixture& mix);

/// Highest posterior density set {theta : pdf(theta) >= c} of mass 1 - alpha.
struct HpdResult {
    IntervalSet set;
    double level = 0.0;  // the density threshold c
    double mass = 0.0;
};
HpdResult hpd(const PosteriorMixture& mix, double alpha);
IntervalSet hpd_set(const PosteriorMixture& mix, double alpha);

ScaledSummary scaled_summary(const RealInterval& iv, const SufficientStats& stats);

} // namespace interval_lab
