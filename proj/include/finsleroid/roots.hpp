#pragma once

#include <functional>

namespace finsleroid {

struct RootOptions {
    double rel_tol = 1e-14;  // on the abscissa
    int max_iter = 60;       // refinement steps after bracketing
    int max_expand = 80;     // bracket doublings
};

// Solves g(x) = 0 for an increasing g on the whole real line: brackets by
// doubling steps away from x0, then refines with an Illinois-weighted secant
// that falls back to bisection whenever the bracket stops halving.
// Throws ConvergenceError carrying the last bracket.
double solve_increasing(const std::function<double(double)>& g, double x0, double step,
                        const RootOptions& opt = {});

}  // namespace finsleroid
