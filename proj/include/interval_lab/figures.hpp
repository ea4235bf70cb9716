#pragma once

#include "interval_lab/kg.hpp"
#include "interval_lab/posterior.hpp"

#include <optional>
#include <string>
#include <vector>

namespace interval_lab {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct FigureOptions {
    double r_max = 10.0;
    double r_step = 0.05;
    double gamma_max = 20.0;
    double gamma_step = 0.05;
    std::vector<double> sigma_hats{1.0, 10.0};
    int density_points = 2001;
    std::optional<SplinePair> spline;  // required by fig6 / fig7
};

/// Data behind the named figure:
///   fig1        theta, density (bimodal posterior example)
///   fig2..fig5  r, offset_sigma1, halflen_sigma1, offset_sigma10, halflen_sigma10
///               (2x2 factorial, xi = 1/1.2; fig2/fig3 sigma^-2 prior,
///                fig4/fig5 scaled prior g = 1; even ids equi-tailed, odd shortest)
///   fig6        gamma, e2
///   fig7        r, offset, halflen, knot
Table figure_table(const std::string& id, const FigureOptions& opts);

/// Posterior density on location +/- 8 * max scale, n points.
Table density_table(const PosteriorMixture& mix, int n);

/// Stats of the 2x2 factorial example at theta_hat = 0.
SufficientStats factorial_stats(double sigma_hat, double r);

} // namespace interval_lab
