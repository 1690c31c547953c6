#include "finsleroid/tensors.hpp"

#include <algorithm>
#include <cmath>

#include "finsleroid/errors.hpp"

namespace finsleroid {

TensorBundle bundle_at(const Vec4& y, const Space& space, const BundleOptions& opt) {
    const Params& p = space.params();
    TensorBundle b{};
    b.y = y;
    b.jets = angle_jets(y, space);
    b.angles = {b.jets.eta.v, b.jets.theta.v, b.jets.phi.v};
    b.F = b.jets.F.v;
    b.l = b.jets.F.g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b.g[i][j] = b.F * b.jets.F.h[i][j] + b.l[i] * b.l[j];
    b.ginv = inverse<4>(b.g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b.h[i][j] = b.g[i][j] - b.l[i] * b.l[j];

    const double sh = std::sinh(b.angles.eta), st = std::sin(b.angles.theta);
    for (int i = 0; i < 4; ++i) {
        b.u[i] = b.F * b.jets.eta.g[i] / p.H;
        b.m[i] = b.F * sh * b.jets.theta.g[i] / p.H;
        b.p[i] = b.F * sh * st * b.jets.phi.g[i] / p.H;
    }

    if (opt.with_cartan) {
        const double step = opt.step > 0.0 ? opt.step : default_fd_step(y, b.jets, opt.order);
        b.C = third_derivative<4>([&](const Vec4& x) { return metric_tensor(x, space); }, y, step,
                                  opt.order);
        b.Rhat = curvature_hat(b.C, b.ginv);
    }
    return b;
}

CoeffSet coefficients_at(const AngleTriple& a, const Params& p) {
    const double sh = std::sinh(a.eta), ch = std::cosh(a.eta);
    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    if (!(sh > 0.0) || !(st > 0.0)) throw DomainError("coefficients need sinh(eta) > 0, sin(theta) > 0");
    const double h2 = p.H * p.H;
    const double lhat = p.S1 * p.S1 + p.H1 * p.H1 * sh * sh;
    const double r1 = ch + std::sqrt(lhat);

    const ThetaProfile tp = theta_profile(a.theta, p);
    CoeffSet c{};
    c.u2 = h2 * r1 / sh;
    c.u3 = c.u2;
    c.L2 = h2 * std::sqrt(lhat) / sh;
    c.L3 = c.L2;
    c.u6 = c.L2 - h2 * (1.0 - h2) / c.L2;
    c.z2check = h2 * tp.R2 / st;
    c.L2check = c.z2check - h2 * ct / st;
    c.z3check = c.L2check - h2 * h2 * (1.0 - 1.0 / p.P) / c.L2check;
    c.z2 = c.z2check / (sh * sh);
    c.z3 = c.z3check / (sh * sh);
    c.z4 = (c.u2 * sh - 2.0 * h2 * ch) / (sh * sh);
    c.r5 = c.z4 / st;
    c.r1 = (c.z2check * st - 2.0 * h2 * ct) / (sh * sh * st * st);
    c.r2 = 0.0;
    c.L = (c.r1 * sh * sh * st + h2 * ct / st) / sh;
    return c;
}

GeneralCoeffs extract_coefficients(const TensorBundle& b) {
    const Vec4 U = mat_vec<4>(b.ginv, b.u);
    const Vec4 M = mat_vec<4>(b.ginv, b.m);
    const Vec4 Pv = mat_vec<4>(b.ginv, b.p);
    const double f2 = b.F * b.F;
    auto con = [&](const Mat4& hess, const Vec4& x, const Vec4& y) { return f2 * quad<4>(hess, x, y); };
    GeneralCoeffs gc;
    const Mat4& he = b.jets.eta.h;
    const Mat4& ht = b.jets.theta.h;
    const Mat4& hp = b.jets.phi.h;
    gc.u = {0.0, con(he, Pv, U), con(he, Pv, Pv), con(he, M, M), con(he, M, U), con(he, Pv, M), con(he, U, U)};
    gc.z = {0.0, con(ht, Pv, M), con(ht, Pv, Pv), con(ht, M, M), con(ht, U, M), con(ht, Pv, U), con(ht, U, U)};
    gc.r = {0.0, con(hp, Pv, M), con(hp, Pv, Pv), con(hp, M, M), con(hp, U, M), con(hp, Pv, U), con(hp, U, U)};
    return gc;
}

CoeffSet coeffset_from_general(const GeneralCoeffs& gc, const AngleTriple& a, const Params& p) {
    const double sh = std::sinh(a.eta), ch = std::cosh(a.eta);
    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    const double h2 = p.H * p.H;
    CoeffSet c{};
    c.u2 = gc.u[2];
    c.u3 = gc.u[3];
    c.u6 = gc.u[6];
    c.z2 = gc.z[2];
    c.z3 = gc.z[3];
    c.z4 = gc.z[4];
    c.r1 = gc.r[1];
    c.r2 = gc.r[2];
    c.r5 = gc.r[5];
    c.L2 = c.u2 - h2 * ch / sh;
    c.L3 = c.u3 - h2 * ch / sh;
    c.L = (c.r1 * sh * sh * st + h2 * ct / st) / sh;
    c.z2check = c.z2 * sh * sh;
    c.z3check = c.z3 * sh * sh;
    c.L2check = c.z2check - h2 * ct / st;
    return c;
}

Tensor3<4> cartan_expansion(const AngleTriple& a, const TensorBundle& b, const CoeffSet& c,
                            const Params& p) {
    const double sh = std::sinh(a.eta), st = std::sin(a.theta);
    const Vec4 &u = b.u, &m = b.m, &q = b.p;
    Tensor3<4> t{};
    const double scale = -1.0 / (b.F * p.H);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int n = 0; n < 4; ++n) {
                double s = c.u6 * u[i] * u[j] * u[n];
                s += c.L3 * (u[i] * m[j] * m[n] + u[n] * m[j] * m[i] + u[j] * m[i] * m[n]);
                s += c.L2 * (u[i] * q[j] * q[n] + u[n] * q[i] * q[j] + u[j] * q[i] * q[n]);
                s += sh * c.z3 * m[i] * m[j] * m[n];
                s += c.L * (m[j] * q[i] * q[n] + m[n] * q[i] * q[j] + m[i] * q[j] * q[n]);
                s += c.r2 * sh * st * q[i] * q[j] * q[n];
                t[i][j][n] = scale * s;
            }
    return t;
}

Tensor4<4> curvature_hat(const Tensor3<4>& C, const Mat4& ginv) {
    Tensor3<4> up{};  // up[h][p][q] = g^{hk} C_kpq
    for (int h = 0; h < 4; ++h)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += ginv[h][k] * C[k][p][q];
                up[h][p][q] = s;
            }
    Tensor4<4> R{};
    for (int j = 0; j < 4; ++j)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
                for (int n = 0; n < 4; ++n) {
                    double s = 0.0;
                    for (int h = 0; h < 4; ++h) s += up[h][p][q] * C[h][j][n] - up[h][p][n] * C[h][j][q];
                    R[j][p][q][n] = s;
                }
    return R;
}

Tensor4<4> curvature_frame_expansion(const TensorBundle& b, const CoeffSet& c, const Params& p) {
    const Vec4 &u = b.u, &m = b.m, &q = b.p;
    const double sh = std::sinh(b.angles.eta);
    const double L = c.L, L2 = c.L2, L3 = c.L3;
    // X[j][pp][qq][n]; the result is X - X with qq <-> n.
    auto X = [&](int j, int pp, int qq, int n) {
        double s = -(c.u6 * u[pp] * u[qq] + L3 * m[pp] * m[qq] + L2 * q[pp] * q[qq]) *
                   (c.u6 * u[j] * u[n] + L3 * m[j] * m[n] + L2 * q[j] * q[n]);
        s -= L2 * L2 * (u[j] * u[qq] * q[pp] * q[n] + u[pp] * u[n] * q[j] * q[qq]);
        s -= L * L2 *
             (u[qq] * q[pp] * m[j] * q[n] + u[pp] * q[qq] * m[n] * q[j] + m[pp] * q[qq] * u[n] * q[j] +
              m[qq] * q[pp] * u[j] * q[n]);
        s -= L * L * (m[n] * m[pp] * q[qq] * q[j] + m[qq] * m[j] * q[n] * q[pp]);
        s -= L3 * L3 * (u[j] * u[qq] * m[pp] * m[n] + u[pp] * u[n] * m[j] * m[qq]);
        s -= L * c.z3 * sh * (m[pp] * m[qq] * q[j] * q[n] + m[j] * m[n] * q[pp] * q[qq]);
        s -= L * L3 * (q[pp] * q[qq] * (u[n] * m[j] + u[j] * m[n]) + q[j] * q[n] * (u[qq] * m[pp] + u[pp] * m[qq]));
        return s;
    };
    const double scale = 1.0 / (p.H * p.H * b.F * b.F);
    Tensor4<4> R{};
    for (int j = 0; j < 4; ++j)
        for (int pp = 0; pp < 4; ++pp)
            for (int qq = 0; qq < 4; ++qq)
                for (int n = 0; n < 4; ++n) R[j][pp][qq][n] = scale * (X(j, pp, qq, n) - X(j, pp, n, qq));
    return R;
}

Tensor4<4> constant_curvature_model(const TensorBundle& b, double Tstar) {
    Tensor4<4> R{};
    const double s = Tstar / (b.F * b.F);
    const Mat4& h = b.h;
    for (int j = 0; j < 4; ++j)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
                for (int n = 0; n < 4; ++n) R[j][p][q][n] = s * (h[p][q] * h[j][n] - h[p][n] * h[j][q]);
    return R;
}

Mat4 angle_form_metric(const TensorBundle& b, const Params& p) {
    const double sh = std::sinh(b.angles.eta), st = std::sin(b.angles.theta);
    const double k = b.F * b.F / (p.H * p.H);
    const Vec4 &e = b.jets.eta.g, &t = b.jets.theta.g, &f = b.jets.phi.g;
    Mat4 g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g[i][j] = b.l[i] * b.l[j] - k * (e[i] * e[j] + sh * sh * (t[i] * t[j] + st * st * f[i] * f[j]));
    return g;
}

Mat3 indicatrix_induced_metric(const AngleTriple& a, const Space& space) {
    const Vec4 l0 = indicatrix_point(a, space);
    BundleOptions opt;
    opt.with_cartan = false;
    const TensorBundle b = bundle_at(l0, space, opt);
    const double tc = space.solution.theta_c();
    const double steps[3] = {1e-5 * std::fmin(1.0, a.eta), 1e-5 * std::min({1.0, a.theta, tc - a.theta}),
                             1e-5};
    std::array<Vec4, 3> tang{};
    for (int k = 0; k < 3; ++k) {
        AngleTriple plus = a, minus = a;
        double* pp = k == 0 ? &plus.eta : k == 1 ? &plus.theta : &plus.phi;
        double* mm = k == 0 ? &minus.eta : k == 1 ? &minus.theta : &minus.phi;
        *pp += steps[k];
        *mm -= steps[k];
        const Vec4 lp = indicatrix_point(plus, space), lm = indicatrix_point(minus, space);
        for (int i = 0; i < 4; ++i) tang[k][i] = (lp[i] - lm[i]) / (2.0 * steps[k]);
    }
    Mat3 out{};
    for (int a1 = 0; a1 < 3; ++a1)
        for (int a2 = 0; a2 < 3; ++a2) out[a1][a2] = -quad<4>(b.h, tang[a1], tang[a2]);
    return out;
}

}  // namespace finsleroid
