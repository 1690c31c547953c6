#include "finsleroid/inversion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "finsleroid/errors.hpp"
#include "finsleroid/roots.hpp"

namespace finsleroid {

double theta_from_f(double f, const Solution& s) {
    if (!(f > 0.0) || !std::isfinite(f)) {
        std::ostringstream msg;
        msg << "f = " << f << " must be positive and finite";
        throw DomainError(msg.str());
    }
    const double tc = s.theta_c();
    const double target = std::log(f);
    // logit coordinate: ln f is close to linear in it near both ends of (0, theta_c)
    auto theta_of = [tc](double x) { return tc / (1.0 + std::exp(-x)); };
    auto g = [&](double x) {
        const double th = theta_of(x);
        if (!(th > 0.0 && th < tc)) return x < 0.0 ? -HUGE_VAL : HUGE_VAL;
        return std::log(s.fcheck(th).value) - target;
    };
    return theta_of(solve_increasing(g, 0.0, 1.0));
}

double eta_from_r(double r, const Solution& s) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "r = " << r << " must be positive and finite";
        throw DomainError(msg.str());
    }
    if (r >= s.r_limit()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "r = " << r << " is not below sup rcheck = " << s.r_limit();
        throw DomainError(msg.str());
    }
    const double target = std::log(r);
    auto g = [&](double x) {
        const double eta = std::exp(x);
        if (eta > 700.0) return HUGE_VAL;
        if (!(eta > 0.0)) return -HUGE_VAL;
        return std::log(s.rcheck(eta).value) - target;
    };
    return std::exp(solve_increasing(g, 0.0, 0.5));
}

TangentAngles angles_from_tangent(const Vec4& y, const Space& space) {
    const Params& p = space.params();
    TangentAngles out{};
    out.vars = decompose(y, space.frame);
    const ScalarVars& v = out.vars;
    if (!(v.w3 > 0.0) || !(v.wperp > 0.0)) {
        std::ostringstream msg;
        msg << "w3 = " << v.w3 << ", wperp = " << v.wperp << " (two-axes section)";
        throw OnAxisSection(msg.str());
    }
    out.f = v.wperp * p.C11 / v.w3;
    if (!std::isfinite(out.f)) throw OnAxisSection("w3 too small relative to wperp");
    const double theta = theta_from_f(out.f, space.solution);
    out.r = v.w3 * space.solution.ucheck(theta).value;
    if (out.r >= space.solution.r_limit()) {
        std::ostringstream msg;
        msg << "w3*U(theta) = " << out.r << " reaches the cone F = 0";
        throw OutsideBLikeRegion(msg.str());
    }
    const double eta = eta_from_r(out.r, space.solution);
    const double phi = std::atan2(v.w1, v.w2) / std::sqrt(p.Chat) + p.Cstar;
    out.angles = {eta, theta, phi};
    out.F = v.b * space.solution.vcheck(eta).value;
    return out;
}

Vec4 tangent_from_angles(const AngleTriple& a, double bval, const Space& space) {
    const Params& p = space.params();
    if (!(bval > 0.0)) throw DomainError("bval must be positive");
    const double alpha = std::sqrt(p.Chat) * (a.phi - p.Cstar);
    if (!(std::fabs(alpha) < 0.5 * std::numbers::pi)) {
        std::ostringstream msg;
        msg << "sqrt(Chat)(phi - C*) = " << alpha << " outside (-pi/2, pi/2)";
        throw DomainError(msg.str());
    }
    const double w3 = space.solution.rcheck(a.eta).value / space.solution.ucheck(a.theta).value;
    const double wperp = w3 * space.solution.fcheck(a.theta).value / p.C11;
    const double w[4] = {1.0, wperp * std::sin(alpha), wperp * std::cos(alpha), w3};
    Vec4 y{};
    for (int r = 0; r < 4; ++r) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += space.frame.dual[r][c] * w[c];
        y[r] = bval * s;
    }
    return y;
}

Vec4 indicatrix_point(const AngleTriple& a, const Space& space) {
    return tangent_from_angles(a, 1.0 / space.solution.vcheck(a.eta).value, space);
}

double metric_function(const Vec4& y, const Space& space) {
    return angles_from_tangent(y, space).F;
}

}  // namespace finsleroid
