#include "finsleroid/deriv.hpp"

#include <cmath>
#include <limits>

namespace finsleroid {

namespace {

// inverse function x(f) of a monotone f with f'(x) = d1, f''(x) = d2
Jet4 invert_node(const Jet4& arg, double x, const Derivs& d) {
    const double inv = 1.0 / d.d1;
    return chain(arg, x, inv, -d.d2 * inv * inv * inv);
}

Jet4 covector(const Vec4& w, const std::array<Jet4, 4>& y) {
    Jet4 s = w[0] * y[0];
    for (int k = 1; k < 4; ++k) s = s + w[k] * y[k];
    return s;
}

}  // namespace

AngleJets angle_jets(const Vec4& y, const Space& space) {
    const Params& p = space.params();
    const Solution& sol = space.solution;
    const TangentAngles base = angles_from_tangent(y, space);

    const auto yj = seed<4>(y);
    AngleJets out;
    out.b = covector(space.frame.b, yj);
    const Jet4 bi = covector(space.frame.i, yj);
    const Jet4 bj = covector(space.frame.j, yj);
    const Jet4 bk = covector(space.frame.i3, yj);

    const Jet4 wperp = sqrt(bi * bi + bj * bj);
    const Jet4 f = p.C11 * wperp / bk;
    out.theta = invert_node(f, base.angles.theta, sol.fcheck(base.angles.theta));
    const Derivs u = sol.ucheck(base.angles.theta);
    const Jet4 r = (bk / out.b) * chain(out.theta, u.value, u.d1, u.d2);
    out.eta = invert_node(r, base.angles.eta, sol.rcheck(base.angles.eta));
    const Derivs v = sol.vcheck(base.angles.eta);
    out.F = out.b * chain(out.eta, v.value, v.d1, v.d2);
    out.phi = atan2(bi, bj) / std::sqrt(p.Chat) + Jet4(p.Cstar);
    return out;
}

Mat4 metric_tensor(const Vec4& y, const Space& space) {
    const Jet4 F = angle_jets(y, space).F;
    Mat4 g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = F.v * F.h[i][j] + F.g[i] * F.g[j];
    return g;
}

double default_fd_step(const Vec4& y, const AngleJets& jets, int order) {
    double scale = 0.0;
    for (double c : y) scale = std::fmax(scale, std::fabs(c));
    for (const Jet4* a : {&jets.eta, &jets.theta, &jets.phi}) {
        double grad = 0.0;
        for (double c : a->g) grad = std::fmax(grad, std::fabs(c));
        if (grad > 0.0) scale = std::fmin(scale, 1.0 / grad);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    return (order == 4 ? std::pow(eps, 0.2) : std::cbrt(eps)) * scale;
}

}  // namespace finsleroid
