#include "interval_lab/design.hpp"

#include "interval_lab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>

namespace interval_lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Decision vector: b at interior knots, then s at every knot except d.
struct Layout {
    std::size_t nk;
    double t_m;

    std::size_t size() const { return 2 * nk - 3; }

    void unpack(std::span<const double> v, std::vector<double>& b, std::vector<double>& s) const {
        b.assign(nk, 0.0);
        s.assign(nk, t_m);
        for (std::size_t i = 1; i + 1 < nk; ++i) b[i] = v[i - 1];
        for (std::size_t i = 0; i + 1 < nk; ++i) s[i] = v[nk - 2 + i];
    }

    // Gradient w.r.t. knot values -> gradient w.r.t. the decision vector.
    void pack_gradient(std::span<const double> gb, std::span<const double> gs,
                       std::span<double> out) const {
        for (std::size_t i = 1; i + 1 < nk; ++i) out[i - 1] += gb[i];
        for (std::size_t i = 0; i + 1 < nk; ++i) out[nk - 2 + i] += gs[i];
    }
};

class AugmentedLagrangian {
public:
    AugmentedLagrangian(const DesignConfig& cfg, const KgKernel& kernel)
        : cfg_(cfg), kernel_(kernel), layout_{kernel.knot_count(), kernel.t_m()},
          multipliers_(kernel.gammas().size(), 0.0) {
        // The objective is linear in the s knot values.
        const std::size_t nk = layout_.nk;
        std::size_t zero_row = 0;
        while (kernel.gammas()[zero_row] != 0.0) ++zero_row;
        obj_s_.assign(nk, 0.0);
        for (std::size_t q = 0; q < nk; ++q) {
            obj_s_[q] = cfg.xi_tilde * kernel.sel_matrix()[zero_row * nk + q] +
                        (1.0 - cfg.xi_tilde) * kernel.integrated_excess_weights()[q];
        }
    }

    double objective(std::span<const double> v) const {
        layout_.unpack(v, b_, s_);
        double f = 0.0;
        for (std::size_t q = 0; q < layout_.nk; ++q) f += obj_s_[q] * (s_[q] - layout_.t_m);
        return f;
    }

    std::vector<double> shortfalls(std::span<const double> v) const {
        layout_.unpack(v, b_, s_);
        const auto cov = kernel_.coverage(b_, s_);
        std::vector<double> g(cov.size());
        for (std::size_t i = 0; i < cov.size(); ++i) g[i] = (1.0 - cfg_.alpha) - cov[i];
        return g;
    }

    // Augmented Lagrangian value; gradient written when grad is non-empty.
    double value(std::span<const double> v, std::span<double> grad) const {
        layout_.unpack(v, b_, s_);
        for (double s : s_) {
            if (!(s > 0.0)) return kInf;
        }
        const bool want = !grad.empty();
        std::vector<double> gb, gs;
        const auto cov = want ? kernel_.coverage(b_, s_, &gb, &gs) : kernel_.coverage(b_, s_);
        double f = 0.0;
        for (std::size_t q = 0; q < layout_.nk; ++q) f += obj_s_[q] * (s_[q] - layout_.t_m);
        const std::size_t nk = layout_.nk;
        std::vector<double> kb(nk, 0.0), ks(nk, 0.0);
        for (std::size_t q = 0; q < nk; ++q) ks[q] = obj_s_[q];
        double pen = 0.0;
        for (std::size_t i = 0; i < cov.size(); ++i) {
            const double g = (1.0 - cfg_.alpha) - cov[i];
            const double shifted = std::max(0.0, multipliers_[i] + penalty * g);
            pen += (shifted * shifted - multipliers_[i] * multipliers_[i]) / (2.0 * penalty);
            if (want && shifted > 0.0) {
                for (std::size_t q = 0; q < nk; ++q) {
                    kb[q] -= shifted * gb[i * nk + q];
                    ks[q] -= shifted * gs[i * nk + q];
                }
            }
        }
        if (want) {
            std::fill(grad.begin(), grad.end(), 0.0);
            layout_.pack_gradient(kb, ks, grad);
        }
        return f + pen;
    }

    void update_multipliers(std::span<const double> g) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            multipliers_[i] = std::max(0.0, multipliers_[i] + penalty * g[i]);
        }
    }

    const Layout& layout() const { return layout_; }

    double penalty = 1e3;

private:
    const DesignConfig& cfg_;
    const KgKernel& kernel_;
    Layout layout_;
    std::vector<double> multipliers_;
    std::vector<double> obj_s_;
    mutable std::vector<double> b_, s_;
};

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Quasi-Newton minimization of the augmented Lagrangian; returns iterations.
int bfgs(const AugmentedLagrangian& al, std::vector<double>& x, const DesignTolerances& tol) {
    const std::size_t n = x.size();
    std::vector<double> H(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    std::vector<double> g(n), g_new(n), dir(n), x_new(n), s(n), y(n), Hy(n);
    double f = al.value(x, g);
    int stall = 0;
    int iter = 0;
    bool scaled = false;
    for (; iter < tol.max_inner; ++iter) {
        if (inf_norm(g) < tol.inner_gradient) break;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) dir[i] -= H[i * n + j] * g[j];
        }
        double slope = std::inner_product(g.begin(), g.end(), dir.begin(), 0.0);
        if (!(slope < 0.0)) {
            // Not a descent direction: restart from steepest descent.
            std::fill(H.begin(), H.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                H[i * n + i] = 1.0;
                dir[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        }
        double step = 1.0;
        double f_new = kInf;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * dir[i];
            f_new = al.value(x_new, {});
            if (f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        f_new = al.value(x_new, g_new);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy > 1e-300) {
            if (!scaled) {
                // Initial inverse-Hessian scaling s^T y / y^T y.
                const double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
                for (std::size_t i = 0; i < n; ++i) H[i * n + i] = sy / yy;
                scaled = true;
            }
            for (std::size_t i = 0; i < n; ++i) {
                Hy[i] = 0.0;
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i * n + j] * y[j];
            }
            const double yHy = std::inner_product(y.begin(), y.end(), Hy.begin(), 0.0);
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i * n + j] += (1.0 + yHy * rho) * rho * s[i] * s[j] -
                                    rho * (Hy[i] * s[j] + s[i] * Hy[j]);
                }
            }
        }
        const double decrease = f - f_new;
        x = x_new;
        g = g_new;
        f = f_new;
        stall = decrease <= 1e-15 * (1.0 + std::abs(f)) ? stall + 1 : 0;
        if (stall >= 3) break;
    }
    return iter;
}

std::vector<double> chunked_coverage(const SplinePair& sp, const std::vector<double>& gammas,
                                     const KgKernel::Resolution& res) {
    std::vector<double> out;
    out.reserve(gammas.size());
    constexpr std::size_t kChunk = 64;
    for (std::size_t i = 0; i < gammas.size(); i += kChunk) {
        std::vector<double> part(gammas.begin() + static_cast<std::ptrdiff_t>(i),
                                 gammas.begin() +
                                     static_cast<std::ptrdiff_t>(std::min(gammas.size(), i + kChunk)));
        const KgKernel kernel(sp.d(), sp.knots(), sp.m(), sp.alpha(), sp.rho(), part, res);
        const auto cov = kernel.coverage(sp);
        out.insert(out.end(), cov.begin(), cov.end());
    }
    return out;
}

} // namespace

void DesignConfig::validate() const {
    if (m < 1) throw std::invalid_argument("design: m must be >= 1");
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("design: |rho| must be < 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("design: alpha in (0, 1)");
    if (!(xi_tilde >= 0.0 && xi_tilde <= 1.0)) {
        throw std::invalid_argument("design: xi_tilde must lie in [0, 1]");
    }
    if (knots.size() < 3 || knots.front() != 0.0 || knots.back() != d) {
        throw std::invalid_argument("design: knots must run from 0 to d with an interior knot");
    }
    if (constraint_grid.points.empty() || constraint_grid.points.front() != 0.0) {
        throw std::invalid_argument("design: constraint grid must start at gamma = 0");
    }
    if (constraint_grid.points.back() < d + 4.0) {
        throw std::invalid_argument("design: constraint grid must span [0, d + 4]");
    }
}

double objective(const SplinePair& sp, const DesignConfig& cfg) {
    const KgKernel kernel(sp.d(), sp.knots(), sp.m(), sp.alpha(), sp.rho(), {0.0},
                          cfg.resolution);
    const double e0 = kernel.scaled_expected_length(sp)[0];
    return cfg.xi_tilde * (e0 - 1.0) +
           (1.0 - cfg.xi_tilde) * kernel.integrated_excess_length(sp.s_values());
}

DesignResult design(const DesignConfig& cfg) {
    cfg.validate();
    const KgKernel kernel(cfg.d, cfg.knots, cfg.m, cfg.alpha, cfg.rho, cfg.constraint_grid.points,
                          cfg.resolution);
    AugmentedLagrangian al(cfg, kernel);
    const Layout& layout = al.layout();
    const DesignTolerances& tol = cfg.tolerances;

    std::vector<double> x(layout.size(), 0.0);
    for (std::size_t i = 0; i + 1 < layout.nk; ++i) x[layout.nk - 2 + i] = layout.t_m;

    DesignResult result;
    al.penalty = tol.initial_penalty;
    double f_prev = al.objective(x);
    double viol_prev = kInf;
    for (int outer = 0; outer < tol.max_outer; ++outer) {
        const int inner = bfgs(al, x, tol);
        const auto g = al.shortfalls(x);
        const double viol = std::max(0.0, *std::max_element(g.begin(), g.end()));
        const double f = al.objective(x);
        result.trace.push_back({outer, inner, al.penalty, f, viol});
        const bool done = std::abs(f - f_prev) < tol.objective_change &&
                          viol < tol.constraint_violation && outer > 0;
        f_prev = f;
        if (done) {
            result.converged = true;
            break;
        }
        al.update_multipliers(g);
        if (viol > 0.25 * viol_prev && al.penalty < tol.max_penalty) al.penalty *= 10.0;
        viol_prev = viol;
    }

    std::vector<double> b, s;
    layout.unpack(x, b, s);
    result.spline = SplinePair(cfg.d, cfg.knots, b, s, cfg.m, cfg.alpha, cfg.rho);
    result.objective = al.objective(x);

    const auto cov = kernel.coverage(b, s);
    result.min_coverage_constraint_grid = *std::min_element(cov.begin(), cov.end());
    const auto dense = chunked_coverage(result.spline, cfg.verification_grid.points, cfg.resolution);
    const auto it = std::min_element(dense.begin(), dense.end());
    result.min_coverage_verification_grid = *it;
    result.gamma_at_min_coverage =
        cfg.verification_grid.points[static_cast<std::size_t>(std::distance(dense.begin(), it))];
    result.feasible = result.min_coverage_constraint_grid >= 1.0 - cfg.alpha - 1e-4 &&
                      result.min_coverage_verification_grid >= 1.0 - cfg.alpha - 5e-4;
    return result;
}

} // namespace interval_lab
