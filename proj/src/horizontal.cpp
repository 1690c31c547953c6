#include "finsleroid/horizontal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "finsleroid/deriv.hpp"
#include "finsleroid/errors.hpp"
#include "finsleroid/roots.hpp"

namespace finsleroid {

namespace {

void need_off_axis(const Vec3& v) {
    const double vp = std::hypot(v[0], v[1]);
    if (!(v[2] > 0.0) || !(vp > 0.0)) {
        std::ostringstream msg;
        msg << "v3 = " << v[2] << ", vperp = " << vp << " (axis of the section)";
        throw OnAxisSection(msg.str());
    }
}

}  // namespace

HorizontalJets horizontal_jets(const Vec3& v, const Solution& s) {
    need_off_axis(v);
    const Params& p = s.params();
    const auto x = seed<3>(v);
    HorizontalJets j;
    j.f = p.C11 * sqrt(x[0] * x[0] + x[1] * x[1]) / x[2];
    const double theta = theta_from_f(j.f.v, s);
    const Derivs fd = s.fcheck(theta);
    const double inv = 1.0 / fd.d1;
    j.theta = chain(j.f, theta, inv, -fd.d2 * inv * inv * inv);
    const Derivs u = s.ucheck(theta);
    j.r = x[2] * chain(j.theta, u.value, u.d1, u.d2);
    j.phi = atan2(x[0], x[1]) / std::sqrt(p.Chat) + Jet3(p.Cstar);
    return j;
}

double r_hat(const Vec3& v, const Solution& s) {
    need_off_axis(v);
    const double f = s.params().C11 * std::hypot(v[0], v[1]) / v[2];
    return v[2] * s.ucheck(theta_from_f(f, s)).value;
}

Mat3 horizontal_metric(const Vec3& v, const Solution& s) {
    const Jet3 r = horizontal_jets(v, s).r;
    Mat3 R{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) R[a][b] = r.v * r.h[a][b] + r.g[a] * r.g[b];
    return R;
}

HorizontalBundle horizontal_bundle(const Vec3& v, const Solution& s, int order) {
    HorizontalBundle b{};
    b.v = v;
    b.jets = horizontal_jets(v, s);
    b.r = b.jets.r.v;
    b.r_a = b.jets.r.g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            b.R[i][j] = b.r * b.jets.r.h[i][j] + b.r_a[i] * b.r_a[j];
            b.h[i][j] = b.R[i][j] - b.r_a[i] * b.r_a[j];
        }
    b.Rinv = inverse<3>(b.R);

    double scale = 0.0;
    for (double c : v) scale = std::fmax(scale, std::fabs(c));
    for (const Jet3* a : {&b.jets.theta, &b.jets.phi}) {
        double grad = 0.0;
        for (double c : a->g) grad = std::fmax(grad, std::fabs(c));
        if (grad > 0.0) scale = std::fmin(scale, 1.0 / grad);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double step = (order == 4 ? std::pow(eps, 0.2) : std::cbrt(eps)) * scale;
    b.C = third_derivative<3>([&](const Vec3& x) { return horizontal_metric(x, s); }, v, step, order);

    Tensor3<3> up{};  // up[f][b][e] = R^{fk} C_kbe
    for (int f = 0; f < 3; ++f)
        for (int bb = 0; bb < 3; ++bb)
            for (int e = 0; e < 3; ++e) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += b.Rinv[f][k] * b.C[k][bb][e];
                up[f][bb][e] = acc;
            }
    for (int bb = 0; bb < 3; ++bb)
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c)
                for (int e = 0; e < 3; ++e) {
                    double acc = 0.0;
                    for (int f = 0; f < 3; ++f) acc += b.C[a][f][c] * up[f][bb][e] - b.C[a][f][e] * up[f][bb][c];
                    b.Rstar[bb][a][c][e] = acc;
                }
    return b;
}

namespace {

Tensor4<3> hh_form(const HorizontalBundle& b) {
    Tensor4<3> t{};
    const Mat3& h = b.h;
    for (int bb = 0; bb < 3; ++bb)
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c)
                for (int e = 0; e < 3; ++e) t[bb][a][c][e] = h[bb][c] * h[a][e] - h[bb][e] * h[a][c];
    return t;
}

}  // namespace

Tensor4<3> horizontal_curvature_model(const HorizontalBundle& b, double P) {
    Tensor4<3> t = hh_form(b);
    const double k = (P - 1.0) / (b.r * b.r);
    for (auto& x : t)
        for (auto& y : x)
            for (auto& z : y)
                for (double& w : z) w *= k;
    return t;
}

double horizontal_curvature_check(const HorizontalBundle& b, const Params& p) {
    const Tensor4<3> model = horizontal_curvature_model(b, p.P);
    return max_abs_diff<3>(b.Rstar, model) / max_abs<3>(model);
}

double horizontal_curvature_factor(const HorizontalBundle& b) {
    const Tensor4<3> basis = hh_form(b);
    double num = 0.0, den = 0.0;
    const double r2 = b.r * b.r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    num += r2 * b.Rstar[i][j][k][l] * basis[i][j][k][l];
                    den += basis[i][j][k][l] * basis[i][j][k][l];
                }
    return num / den;
}

double horizontal_angle_form_check(const HorizontalBundle& b, const Params& p) {
    const double st = std::sin(b.jets.theta.v);
    const double k = b.r * b.r / p.P;
    const Vec3 &t = b.jets.theta.g, &f = b.jets.phi.g;
    Mat3 model{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) model[i][j] = k * (t[i] * t[j] + st * st * f[i] * f[j]);
    return max_abs_diff<3>(b.h, model) / max_abs<3>(model);
}

double determinant_closed_form(double theta, const Params& p) {
    const ThetaProfile t = theta_profile(theta, p);
    const double y2 = t.Y2 * t.Y2;
    return std::pow(t.I * p.C39, 6) * std::pow(p.C11 / p.C17, 4) /
           (p.P * p.P * p.Chat * p.Chat * p.Chat * y2 * y2);
}

double determinant_check(const HorizontalBundle& b, const Params& p) {
    const double expected = determinant_closed_form(b.jets.theta.v, p);
    return std::fabs(determinant<3>(b.R) - expected) / expected;
}

double r_w3_closed_form(const Vec3& v, const Params& p) {
    const double vp = std::hypot(v[0], v[1]);
    const double f = p.C11 * vp / v[2];
    const Solution s(p);
    const ThetaProfile t = theta_profile(theta_from_f(f, s), p);
    const double q = (vp / v[2]) * (vp / v[2]);
    return t.Ucheck - q * t.I * t.I * p.C11 * p.C11 * p.T * (p.C39 * p.C39) /
                          (t.Ucheck * t.Y2 * t.Y2 * p.C17 * p.C17);
}

double r_wperp_closed_form(const Vec3& v, const Params& p) {
    const double vp = std::hypot(v[0], v[1]);
    const double f = p.C11 * vp / v[2];
    const Solution s(p);
    const ThetaProfile t = theta_profile(theta_from_f(f, s), p);
    const double ratio = p.C39 / p.C17;
    return (vp / v[2]) * t.I * t.I * p.C11 * p.C11 * p.T * ratio * ratio / (t.Ucheck * t.Y2 * t.Y2);
}

SectionRadius section_radius(double lambda, const Solution& s) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
    const double target = 1.0 / lambda;
    if (!(target < s.v_at_zero())) {
        std::ostringstream msg;
        msg << "1/lambda = " << target << " is not below sup Vcheck = " << s.v_at_zero();
        throw DomainError(msg.str());
    }
    auto g = [&](double x) {
        const double eta = std::exp(x);
        if (eta > 700.0) return HUGE_VAL;
        if (!(eta > 0.0)) return -HUGE_VAL;
        return std::log(target) - std::log(s.vcheck(eta).value);
    };
    SectionRadius out{};
    out.eta_star = std::exp(solve_increasing(g, 0.0, 0.5));
    out.r_max = s.rcheck(out.eta_star).value;
    out.radius = lambda * out.r_max;
    return out;
}

SectionCurvature section_curvature(double lambda, const Space& space, int n_theta, int n_phi) {
    const Params& p = space.params();
    const Solution& s = space.solution;
    SectionCurvature out{};
    out.radius = section_radius(lambda, s);
    out.expected = p.P / (out.radius.radius * out.radius.radius);
    const double tc = s.theta_c();
    const double amax = 0.5 * std::numbers::pi - 0.1;
    double k_sum = 0.0;
    for (int it = 0; it < n_theta; ++it)
        for (int ip = 0; ip < n_phi; ++ip) {
            const double theta = 0.1 + (tc - 0.2) * (it + 0.5) / n_theta;
            const double alpha = -amax + 2.0 * amax * (ip + 0.5) / n_phi;
            const AngleTriple a{out.radius.eta_star, theta, alpha / std::sqrt(p.Chat) + p.Cstar};
            const Vec4 y = tangent_from_angles(a, lambda, space);
            out.max_unit_defect = std::fmax(out.max_unit_defect, std::fabs(metric_function(y, space) - 1.0));
            const ScalarVars sv = decompose(y, space.frame);
            const Vec3 u{sv.i, sv.j, sv.i3};
            const HorizontalBundle hb = horizontal_bundle(u, s);
            const double k = horizontal_curvature_factor(hb);
            k_sum += k;
            out.max_rel_residual = std::fmax(out.max_rel_residual, std::fabs(1.0 + k - p.P) / p.P);
            ++out.points;
        }
    out.curvature = (1.0 + k_sum / out.points) / (out.radius.radius * out.radius.radius);
    return out;
}

}  // namespace finsleroid
