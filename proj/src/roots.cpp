#include "finsleroid/roots.hpp"

#include <cmath>
#include <sstream>

#include "finsleroid/errors.hpp"

namespace finsleroid {

namespace {

[[noreturn]] void fail(const char* why, double a, double ga, double b, double gb, int iters) {
    std::ostringstream msg;
    msg.precision(17);
    msg << why << ": bracket [" << a << ", " << b << "], g = [" << ga << ", " << gb << "], "
        << iters << " iterations";
    throw ConvergenceError(msg.str());
}

}  // namespace

double solve_increasing(const std::function<double(double)>& g, double x0, double step,
                        const RootOptions& opt) {
    double a = x0, ga = g(a);
    if (std::isnan(ga)) fail("function undefined at the initial guess", a, ga, a, ga, 0);
    if (ga == 0.0) return a;
    double b = a, gb = ga;
    int expand = 0;
    // Walk away from x0 until the sign flips.
    if (ga < 0.0) {
        while (gb < 0.0) {
            a = b;
            ga = gb;
            b += step;
            gb = g(b);
            step *= 2.0;
            if (std::isnan(gb) || ++expand > opt.max_expand)
                fail("bracket expansion failed", a, ga, b, gb, expand);
        }
    } else {
        while (ga > 0.0) {
            b = a;
            gb = ga;
            a -= step;
            ga = g(a);
            step *= 2.0;
            if (std::isnan(ga) || ++expand > opt.max_expand)
                fail("bracket expansion failed", a, ga, b, gb, expand);
        }
    }
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;

    int side = 0;  // which end was retained last (Illinois halving)
    double width = b - a;
    for (int it = 0; it < opt.max_iter; ++it) {
        double x = (a * gb - b * ga) / (gb - ga);
        const bool stalled = (b - a) > 0.5 * width;
        if (!(x > a && x < b) || (it % 3 == 2 && stalled)) x = 0.5 * (a + b);
        if (it % 3 == 2) width = b - a;
        const double gx = g(x);
        if (std::isnan(gx)) fail("function undefined inside bracket", a, ga, b, gb, it);
        if (gx == 0.0) return x;
        if (gx < 0.0) {
            a = x;
            ga = gx;
            if (side == -1) gb *= 0.5;
            side = -1;
        } else {
            b = x;
            gb = gx;
            if (side == 1) ga *= 0.5;
            side = 1;
        }
        if (b - a <= opt.rel_tol * std::fmax(1.0, std::fabs(x))) return x;
    }
    fail("iteration cap reached", a, ga, b, gb, opt.max_iter);
}

}  // namespace finsleroid
