#pragma once

#include "finsleroid/charfun.hpp"
#include "finsleroid/core.hpp"

namespace finsleroid {

struct AngleTriple {
    double eta, theta, phi;
};

// One tangent space: constants, frame and the characteristic functions.
struct Space {
    explicit Space(const Params& p, const Frame& f = default_frame(),
                   Perturbation kind = Perturbation::none)
        : frame(f), solution(p, kind) {}

    const Params& params() const { return solution.params(); }

    Frame frame;
    Solution solution;
};

double theta_from_f(double f, const Solution& s);
double eta_from_r(double r, const Solution& s);

struct TangentAngles {
    AngleTriple angles;
    double F;
    ScalarVars vars;
    double f;  // wperp * C11 / w3
    double r;  // w3 * Ucheck(theta)
};

// phi uses the full planar angle alpha = atan2(w1, w2) in (-pi, pi];
// it coincides with arctan(t)/sqrt(Chat) + C* whenever w2 > 0.
TangentAngles angles_from_tangent(const Vec4& y, const Space& space);

// Inverse on the principal chart |sqrt(Chat)(phi - C*)| < pi/2.
Vec4 tangent_from_angles(const AngleTriple& a, double bval, const Space& space);

// The unit vector with the given angles (F = 1).
Vec4 indicatrix_point(const AngleTriple& a, const Space& space);

double metric_function(const Vec4& y, const Space& space);

}  // namespace finsleroid
