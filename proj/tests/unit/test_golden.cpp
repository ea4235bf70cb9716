#include <doctest.h>

#include "golden.hpp"
#include "interval_lab/figures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace interval_lab;

namespace {

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    Table t;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            if (header) t.columns.push_back(cell);
            else row.push_back(std::stod(cell));
        }
        if (!header) t.rows.push_back(row);
        header = false;
    }
    return t;
}

void compare(const Table& got, const Table& want, double tol) {
    REQUIRE(got.columns == want.columns);
    REQUIRE(got.rows.size() == want.rows.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.rows.size(); ++i) {
        for (std::size_t k = 0; k < got.rows[i].size(); ++k) {
            const double a = got.rows[i][k], b = want.rows[i][k];
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    }
    CHECK(worst < tol);
}

} // namespace

TEST_CASE("figure data matches the committed golden files") {
    FigureOptions opts;
    opts.spline = golden_design();
    for (const char* id : {"fig2", "fig3", "fig4", "fig5", "fig7"}) {
        CAPTURE(id);
        compare(figure_table(id, opts), read_csv(golden_path(std::string(id) + ".csv")), 1e-9);
    }
}

TEST_CASE("figure-level shape properties") {
    FigureOptions opts;
    opts.spline = golden_design();
    SUBCASE("scaled prior summaries do not depend on sigma_hat") {
        for (const char* id : {"fig4", "fig5"}) {
            const Table t = figure_table(id, opts);
            for (const auto& row : t.rows) {
                CHECK(std::abs(row[1] - row[3]) < 1e-9);
                CHECK(std::abs(row[2] - row[4]) < 1e-9);
            }
        }
    }
    SUBCASE("sigma^-2 prior summaries do") {
        const Table t = figure_table("fig2", opts);
        double diff = 0.0;
        for (const auto& row : t.rows) diff = std::max(diff, std::abs(row[2] - row[4]));
        CHECK(diff > 1e-3);
    }
    SUBCASE("fig1 density integrates to one with two maxima") {
        const Table t = figure_table("fig1", opts);
        double area = 0.0;
        int maxima = 0;
        for (std::size_t i = 1; i < t.rows.size(); ++i) {
            area += 0.5 * (t.rows[i][1] + t.rows[i - 1][1]) * (t.rows[i][0] - t.rows[i - 1][0]);
            if (i + 1 < t.rows.size() && t.rows[i][1] > t.rows[i - 1][1] && t.rows[i][1] > t.rows[i + 1][1]) {
                ++maxima;
            }
        }
        CHECK(std::abs(area - 1.0) < 1e-4);
        CHECK(maxima == 2);
    }
    SUBCASE("fig7 marks the knots and reverts beyond d") {
        const Table t = figure_table("fig7", opts);
        int knots = 0;
        for (const auto& row : t.rows) {
            knots += row[3] == 1.0;
            if (std::abs(row[0]) >= 12.0) {
                CHECK(row[1] == 0.0);
                CHECK(row[2] == opts.spline->t_m());
            }
        }
        CHECK(knots == 11);  // 0, +/-2, ..., +/-10 inside [-10, 10]
    }
    CHECK_THROWS_AS(figure_table("fig9", opts), std::invalid_argument);
    CHECK_THROWS_AS(figure_table("fig6", FigureOptions{}), std::invalid_argument);
}
