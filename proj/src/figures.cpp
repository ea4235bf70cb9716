#include "interval_lab/figures.hpp"

#include "interval_lab/credible.hpp"
#include "interval_lab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace interval_lab {

namespace {

std::vector<double> symmetric_grid(double max, double step) {
    if (!(step > 0.0) || !(max > 0.0)) throw std::invalid_argument("figure: bad grid");
    const auto n = static_cast<long>(std::llround(max / step));
    std::vector<double> out;
    for (long i = -n; i <= n; ++i) out.push_back(static_cast<double>(i) * step);
    return out;
}

std::string sigma_label(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", s);
    return buf;
}

Table summary_figure(PriorFamily family, bool shortest_kind, const FigureOptions& opts) {
    const double xi = 1.0 / 1.2;
    const double alpha = 0.05;
    Table t;
    t.columns.push_back("r");
    for (double sh : opts.sigma_hats) {
        t.columns.push_back("offset_sigma" + sigma_label(sh));
        t.columns.push_back("halflen_sigma" + sigma_label(sh));
    }
    const auto rs = symmetric_grid(opts.r_max, opts.r_step);
    t.rows.assign(rs.size(), {});
    PriorSpec prior{family, xi, 1.0};
    parallel_for(rs.size(), [&](std::size_t i) {
        std::vector<double> row{rs[i]};
        for (double sh : opts.sigma_hats) {
            const SufficientStats st = factorial_stats(sh, rs[i]);
            const PosteriorMixture mix = build_posterior(st, prior);
            const RealInterval iv =
                shortest_kind ? shortest(mix, alpha).interval : equi_tailed(mix, alpha);
            const ScaledSummary s = scaled_summary(iv, st);
            row.push_back(s.scaled_offset);
            row.push_back(s.scaled_half_length);
        }
        t.rows[i] = std::move(row);
    });
    return t;
}

const SplinePair& need_spline(const FigureOptions& opts, const std::string& id) {
    if (!opts.spline) throw std::invalid_argument(id + " needs a spline pair");
    return *opts.spline;
}

} // namespace

SufficientStats factorial_stats(double sigma_hat, double r) {
    SufficientStats st;
    st.theta_hat = 0.0;
    st.sigma_hat = sigma_hat;
    st.tau_hat = r * sigma_hat;
    st.m = 4;
    st.rho = -1.0 / std::sqrt(2.0);
    return st;
}

Table density_table(const PosteriorMixture& mix, int n) {
    if (n < 2) throw std::invalid_argument("density: need at least two points");
    const double scale = std::max(mix.spike.scale, mix.slab.scale);
    double lo = std::min(mix.spike.location, mix.slab.location) - 8.0 * scale;
    double hi = std::max(mix.spike.location, mix.slab.location) + 8.0 * scale;
    if (mix.weight_spike == 1.0) {
        lo = mix.spike.location - 8.0 * mix.spike.scale;
        hi = mix.spike.location + 8.0 * mix.spike.scale;
    } else if (mix.weight_spike == 0.0) {
        lo = mix.slab.location - 8.0 * mix.slab.scale;
        hi = mix.slab.location + 8.0 * mix.slab.scale;
    }
    Table t{{"theta", "density"}, {}};
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        t.rows.push_back({x, mix.pdf(x)});
    }
    return t;
}

Table figure_table(const std::string& id, const FigureOptions& opts) {
    if (id == "fig1") {
        SufficientStats st;
        st.theta_hat = 0.0;
        st.sigma_hat = 0.1;
        st.tau_hat = 3.0 * 0.1;
        st.m = 100;
        st.rho = 0.98;
        const PriorSpec prior{PriorFamily::SlabSpikeSigma2, 0.8, 1.0};
        return density_table(build_posterior(st, prior), opts.density_points);
    }
    if (id == "fig2") return summary_figure(PriorFamily::SlabSpikeSigma2, false, opts);
    if (id == "fig3") return summary_figure(PriorFamily::SlabSpikeSigma2, true, opts);
    if (id == "fig4") return summary_figure(PriorFamily::SlabSpikeScaled, false, opts);
    if (id == "fig5") return summary_figure(PriorFamily::SlabSpikeScaled, true, opts);
    if (id == "fig6") {
        const SplinePair& sp = need_spline(opts, id);
        const auto n = static_cast<std::size_t>(std::llround(opts.gamma_max / opts.gamma_step));
        Table t{{"gamma", "e2"}, std::vector<std::vector<double>>(n + 1)};
        parallel_for(n + 1, [&](std::size_t i) {
            const double g = static_cast<double>(i) * opts.gamma_step;
            const double e = scaled_expected_length(g, sp);
            t.rows[i] = {g, e * e};
        });
        return t;
    }
    if (id == "fig7") {
        const SplinePair& sp = need_spline(opts, id);
        Table t{{"r", "offset", "halflen", "knot"}, {}};
        for (double r : symmetric_grid(opts.r_max, opts.r_step)) {
            const bool knot = std::any_of(sp.knots().begin(), sp.knots().end(), [&](double k) {
                return std::abs(std::abs(r) - k) < 1e-9;
            });
            t.rows.push_back({r, -sp.b(r), sp.s(r), knot ? 1.0 : 0.0});
        }
        return t;
    }
    throw std::invalid_argument("unknown figure id '" + id + "'");
}

} // namespace interval_lab
