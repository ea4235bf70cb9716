#pragma once

#include "interval_lab/kg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace interval_lab {

/// Fixed-node quadrature for the coverage and expected length of J(b, s) on a
/// set of gamma values, for spline pairs sharing (d, knots, m, alpha, rho).
///
/// Uses the decomposition
///   coverage(gamma) = 1 - alpha + E[ W * int_{-d}^{d} (Psi_J - Psi_I)(x) phi(W x - gamma) dx ],
/// so only |x| < d contributes, and Gauss-Legendre panels follow the knots.
/// Nodes do not move with the spline values, so results are smooth in them;
/// this is what the design optimizer differentiates.
class KgKernel {
public:
    struct Resolution {
        int x_subpanels = 2;   // per knot interval
        int x_order = 10;      // Gauss-Legendre points per subpanel
        int w_panels = 8;
        int w_order = 10;
    };

    KgKernel(double d, std::vector<double> knots, int m, double alpha, double rho,
             std::vector<double> gammas, Resolution res);
    KgKernel(double d, std::vector<double> knots, int m, double alpha, double rho,
             std::vector<double> gammas);

    const std::vector<double>& gammas() const { return gammas_; }
    std::size_t knot_count() const { return knots_.size(); }
    double t_m() const { return t_m_; }

    /// Coverage at every gamma. If grad_b / grad_s are non-empty they receive
    /// d coverage / d knot value, row-major [gamma][knot].
    std::vector<double> coverage(std::span<const double> b_values,
                                 std::span<const double> s_values,
                                 std::vector<double>* grad_b = nullptr,
                                 std::vector<double>* grad_s = nullptr) const;

    std::vector<double> coverage(const SplinePair& sp) const;

    /// e(gamma; s) at every gamma; affine in the s knot values.
    std::vector<double> scaled_expected_length(std::span<const double> s_values) const;
    std::vector<double> scaled_expected_length(const SplinePair& sp) const;

    /// Linear map from s knot values to e(gamma_i) - 1, row-major [gamma][knot]
    /// acting on (s_values - t(m)).
    const std::vector<double>& sel_matrix() const { return sel_matrix_; }

    /// int_{-inf}^{inf} (e(gamma; s) - 1) d gamma, in closed form via Fubini:
    /// 2 int_0^d (s(x) - t(m)) dx * E[W^2] / (t(m) E[W]) with E[W^2] = 1.
    double integrated_excess_length(std::span<const double> s_values) const;
    const std::vector<double>& integrated_excess_weights() const { return int_weights_; }

private:
    double d_;
    std::vector<double> knots_;
    int m_;
    double alpha_;
    double rho_;
    double t_m_;
    std::vector<double> gammas_;

    std::vector<double> x_nodes_;      // in (0, d)
    std::vector<double> x_weights_;
    std::vector<double> cardinal_;     // [x_node][knot]
    std::vector<double> w_nodes_;
    std::vector<double> w_weights_;    // includes chi density and the Jacobian factor w
    // phi(+/- w x - gamma) * weights, [gamma][w][x][2].
    std::vector<double> kernel_;
    std::vector<std::uint32_t> active_;       // x indices with non-negligible kernel
    std::vector<std::size_t> active_begin_;  // offsets into active_, per [gamma][w]
    std::vector<double> standard_part_;  // sum of kernel * Psi_I, per gamma
    std::vector<double> sel_matrix_;
    std::vector<double> int_weights_;
};

} // namespace interval_lab
