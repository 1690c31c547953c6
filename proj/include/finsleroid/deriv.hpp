#pragma once

#include <functional>

#include "finsleroid/inversion.hpp"
#include "finsleroid/jet.hpp"

namespace finsleroid {

using Jet4 = Jet<4>;

// Exact second-order jets of the angles and of F with respect to y.
// The two root-finding nodes are differentiated by the inverse-function rule.
struct AngleJets {
    Jet4 b;
    Jet4 eta, theta, phi;
    Jet4 F;
};

AngleJets angle_jets(const Vec4& y, const Space& space);

// g_ij = (1/2) d^2 F^2 / dy^i dy^j
Mat4 metric_tensor(const Vec4& y, const Space& space);

// eps^{1/3} (order 2) or eps^{1/5} (order 4) times the length over which y can
// move before the angles change by O(1); near the cone this is far below |y|.
double default_fd_step(const Vec4& y, const AngleJets& jets, int order = 4);

// C_ijn = (1/2) d g_ij / dy^n by central differences of an exact metric.
// order 2: three-point stencil; order 4: five-point stencil.
template <std::size_t N>
Tensor3<N> third_derivative(const std::function<Mat<N>(const Vec<N>&)>& metric, const Vec<N>& y,
                            double step, int order = 2) {
    Tensor3<N> c{};
    for (std::size_t n = 0; n < N; ++n) {
        auto shifted = [&](double s) {
            Vec<N> x = y;
            x[n] += s;
            return metric(x);
        };
        Mat<N> d{};
        if (order == 4) {
            const Mat<N> p1 = shifted(step), m1 = shifted(-step);
            const Mat<N> p2 = shifted(2.0 * step), m2 = shifted(-2.0 * step);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    d[i][j] = (8.0 * (p1[i][j] - m1[i][j]) - (p2[i][j] - m2[i][j])) / (12.0 * step);
        } else {
            const Mat<N> p1 = shifted(step), m1 = shifted(-step);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j) d[i][j] = (p1[i][j] - m1[i][j]) / (2.0 * step);
        }
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) c[i][j][n] = 0.25 * (d[i][j] + d[j][i]);
    }
    return c;
}

}  // namespace finsleroid
