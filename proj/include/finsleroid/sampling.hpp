#pragma once

#include <string>
#include <vector>

#include "finsleroid/inversion.hpp"

namespace finsleroid {

struct GridSpec {
    int a = 16, b = 16, c = 8;
};

// Parses "AxBxC" (or "AxB", c = 1); throws Error on malformed or non-positive input.
GridSpec parse_grid(const std::string& text);

// Unit vectors on an (eta, theta, phi) grid: eta log-spaced in [1e-2, 6], theta in
// [0.05, theta_c - 0.05], sqrt(Chat)(phi - C*) in [-pi/2 + 0.05, pi/2 - 0.05].
// F is recomputed from y through the full inversion.
struct IndicatrixRow {
    double eta, theta, phi;
    Vec4 y;
    double F;
};
std::vector<IndicatrixRow> sample_indicatrix(const Space& space, const GridSpec& grid);
std::string indicatrix_csv(const std::vector<IndicatrixRow>& rows);

// Points of the horizontal space at height lambda: the section indicatrix at
// (theta, phi) scaled by factors in [0.5, 2] (grid.c of them; c = 1 keeps the
// indicatrix itself).
struct HorizontalRow {
    double theta, phi, scale;
    Vec3 v;
    double r, detR, min_eig, curv_residual;
};
std::vector<HorizontalRow> sample_horizontal(const Space& space, double lambda, const GridSpec& grid);
std::string horizontal_csv(const std::vector<HorizontalRow>& rows);

}  // namespace finsleroid
