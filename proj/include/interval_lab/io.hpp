#pragma once

#include "interval_lab/design.hpp"
#include "interval_lab/kg.hpp"
#include "interval_lab/monte_carlo.hpp"
#include "interval_lab/regression.hpp"

#include <stdexcept>
#include <string>

namespace interval_lab {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"X": [[...]], "y": [...], "a": [...], "c": [...], "t": 0.0}
RegressionProblem parse_problem(const std::string& json_text);

/// {"d", "knots", "b", "s", "m", "alpha", "rho"}, 17 significant digits.
std::string spline_pair_to_json(const SplinePair& sp);
SplinePair spline_pair_from_json(const std::string& json_text);

/// Every field optional; missing ones keep DesignConfig defaults.
/// "constraint_grid" / "verification_grid" are {"max", "step"} objects.
DesignConfig parse_design_config(const std::string& json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shortest decimal form that round-trips to the same double.
std::string format_exact(double x);
/// Fixed 12 significant digits.
std::string format_12(double x);

} // namespace interval_lab
