#include <doctest.h>

#include <cmath>
#include <random>

#include "finsleroid/tensors.hpp"
#include "oracles.hpp"

using namespace finsleroid;

namespace {

const Space space{validate_params(RawParams{})};
const Space second{validate_params(RawParams{1.5, 3.0, 0.2})};
const Vec4 y_ref = tangent_from_angles({1.0, 1.0, 0.5}, 1.5, space);

std::vector<Vec4> sample_points(const Space& s, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> le(std::log(0.05), std::log(3.0)), th(0.1, s.solution.theta_c() - 0.1),
        al(-1.3, 1.3), bv(0.5, 3.0);
    std::vector<Vec4> out;
    for (int k = 0; k < n; ++k) {
        const AngleTriple a{std::exp(le(rng)), th(rng), al(rng) / std::sqrt(s.params().Chat) + s.params().Cstar};
        out.push_back(tangent_from_angles(a, bv(rng), s));
    }
    return out;
}

}  // namespace

TEST_CASE("metric contractions with y") {
    const TensorBundle b = bundle_at(y_ref, space, {false});
    CHECK(quad<4>(b.g, y_ref, y_ref) == doctest::Approx(b.F * b.F).epsilon(1e-12));
    const Vec4 hy = mat_vec<4>(b.h, y_ref);
    for (double c : hy) CHECK(std::fabs(c) < 1e-12 * b.F);
    CHECK(dot<4>(b.l, y_ref) == doctest::Approx(b.F).epsilon(1e-13));
}

TEST_CASE("metric reconstructions from the angle frame") {
    for (const Space* s : {&space, &second})
        for (const Vec4& y : sample_points(*s, 40, 11)) {
            const TensorBundle b = bundle_at(y, *s, {false});
            Mat4 frame{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    frame[i][j] = b.l[i] * b.l[j] - b.u[i] * b.u[j] - b.m[i] * b.m[j] - b.p[i] * b.p[j];
            CHECK(max_abs_diff<4>(b.g, frame) < 1e-8 * max_abs<4>(b.g));
            CHECK(max_abs_diff<4>(b.g, angle_form_metric(b, s->params())) < 1e-8 * max_abs<4>(b.g));
            // independent check of the Hessian itself
            const Mat4 fd = oracle::fd_hessian(
                [&](const Vec4& x) {
                    const double F = metric_function(x, *s);
                    return 0.5 * F * F;
                },
                y, 20.0 * default_fd_step(y, b.jets, 2));
            CHECK(max_abs_diff<4>(b.g, fd) < 1e-5 * max_abs<4>(b.g));
        }
}

TEST_CASE("metric has Lorentzian signature") {
    for (const Vec4& y : sample_points(space, 50, 5)) {
        const Vec4 ev = symmetric_eigenvalues<4>(metric_tensor(y, space));
        int pos = 0, neg = 0;
        for (double e : ev) (e > 0.0 ? pos : neg) += 1;
        CHECK(pos == 1);
        CHECK(neg == 3);
    }
}

TEST_CASE("closed-form coefficients satisfy their defining relations") {
    for (const Space* s : {&space, &second}) {
        const Params& p = s->params();
        const double h2 = p.H * p.H;
        for (double eta : {0.05, 0.5, 2.0, 5.0})
            for (double theta : {0.2, 1.0, s->solution.theta_c() - 0.2}) {
                const CoeffSet c = coefficients_at({eta, theta, 0.0}, p);
                const double sh = std::sinh(eta);
                CHECK(c.L2 * c.L2 / h2 == doctest::Approx(h2 - 1.0 - h2 * (1.0 - p.P) / (p.P * sh * sh)).epsilon(1e-12));
                CHECK(c.L2check * (c.L2check - c.z3check) / (h2 * h2) == doctest::Approx(1.0 - 1.0 / p.P).epsilon(1e-12));
                CHECK(c.L2 * (c.L2 - c.u6) / h2 == doctest::Approx(1.0 - h2).epsilon(1e-12));
                CHECK(c.u3 == c.u2);
                CHECK(c.L3 == c.L2);
                CHECK(c.z4 == doctest::Approx(c.r5 * std::sin(theta)).epsilon(1e-14));
            }
    }
}

TEST_CASE("coefficients read off exact Hessians match the closed forms") {
    for (const Space* s : {&space, &second})
        for (const Vec4& y : sample_points(*s, 30, 17)) {
            const TensorBundle b = bundle_at(y, *s, {false});
            const CoeffSet got = coeffset_from_general(extract_coefficients(b), b.angles, s->params());
            const CoeffSet want = coefficients_at(b.angles, s->params());
            for (auto [x, w] : {std::pair{got.u2, want.u2}, {got.u3, want.u3}, {got.u6, want.u6}, {got.z2, want.z2},
                                {got.z3, want.z3}, {got.z4, want.z4}, {got.r1, want.r1}, {got.r5, want.r5}})
                CHECK(std::fabs(x - w) < 1e-7 * std::fmax(1.0, std::fabs(w)));
        }
}

TEST_CASE("the phi-phi-phi coefficient vanishes under a finite-difference Hessian") {
    for (const Vec4& y : sample_points(space, 10, 23)) {
        const TensorBundle b = bundle_at(y, space, {false});
        const Mat4 phi_ij = oracle::fd_hessian([&](const Vec4& x) { return angles_from_tangent(x, space).angles.phi; }, y,
                                               20.0 * default_fd_step(y, b.jets, 2));
        const Vec4 P = mat_vec<4>(b.ginv, b.p), M = mat_vec<4>(b.ginv, b.m);
        const double r2 = b.F * b.F * quad<4>(phi_ij, P, P);
        const double r1 = b.F * b.F * quad<4>(phi_ij, P, M);
        CHECK(std::fabs(r2) < 1e-5 * std::fmax(1.0, std::fabs(r1)));
    }
}

TEST_CASE("Cartan expansion against the finite-difference Cartan tensor") {
    for (const Space* s : {&space, &second})
        for (const Vec4& y : sample_points(*s, 20, 29)) {
            const TensorBundle b = bundle_at(y, *s);
            const Tensor3<4> model = cartan_expansion(b.angles, b, coefficients_at(b.angles, s->params()), s->params());
            CHECK(max_abs_diff<4>(b.C, model) < 1e-5 * max_abs<4>(b.C));
            double worst = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double cl = 0.0;
                    for (int n = 0; n < 4; ++n) cl += model[i][j][n] * y[n] / b.F;
                    worst = std::fmax(worst, std::fabs(cl));
                    for (int n = 0; n < 4; ++n) {
                        worst = std::fmax(worst, std::fabs(model[i][j][n] - model[j][n][i]));
                        worst = std::fmax(worst, std::fabs(model[i][j][n] - model[i][n][j]));
                    }
                }
            CHECK(worst < 1e-12 * max_abs<4>(model));
        }
}

TEST_CASE("curvature tensor structure") {
    const TensorBundle b = bundle_at(y_ref, space);
    const double norm = max_abs<4>(b.Rhat);
    double anti = 0.0, ycon = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                double c = 0.0;
                for (int n = 0; n < 4; ++n) {
                    anti = std::fmax(anti, std::fabs(b.Rhat[j][p][q][n] + b.Rhat[j][p][n][q]));
                    c += b.Rhat[j][p][q][n] * y_ref[n];
                }
                ycon = std::fmax(ycon, std::fabs(c));
            }
    CHECK(anti < 1e-14 * norm);
    CHECK(ycon < 1e-6 * norm);
}

TEST_CASE("indicatrix curvature is the constant 1 - H^2") {
    for (const Space* s : {&space, &second}) {
        const double tstar = s->params().Tstar;
        CHECK(tstar == doctest::Approx(1.0 - s->params().H * s->params().H));
        for (const Vec4& y : sample_points(*s, 10, 31)) {
            const TensorBundle b = bundle_at(y, *s);
            const Tensor4<4> model = constant_curvature_model(b, tstar);
            CHECK(max_abs_diff<4>(b.Rhat, model) < 1e-4 * max_abs<4>(model));
            const Tensor4<4> expanded = curvature_frame_expansion(b, coefficients_at(b.angles, s->params()), s->params());
            CHECK(max_abs_diff<4>(expanded, model) < 1e-9 * max_abs<4>(model));
        }
    }
    const TensorBundle b = bundle_at(y_ref, space);
    CHECK(max_abs_diff<4>(b.Rhat, constant_curvature_model(b, space.params().Tstar)) <
          1e-5 * max_abs<4>(constant_curvature_model(b, space.params().Tstar)));
}

TEST_CASE("induced metric on the indicatrix is diagonal") {
    for (const AngleTriple& a : {AngleTriple{0.3, 0.8, 0.5}, AngleTriple{1.5, 1.9, -1.0}, AngleTriple{2.5, 0.4, 2.0}}) {
        const Mat3 i = indicatrix_induced_metric(a, space);
        const double h2 = 4.0, sh = std::sinh(a.eta), st = std::sin(a.theta);
        CHECK(i[0][0] == doctest::Approx(1.0 / h2).epsilon(1e-6));
        CHECK(i[1][1] == doctest::Approx(sh * sh / h2).epsilon(1e-6));
        CHECK(i[2][2] == doctest::Approx(sh * sh * st * st / h2).epsilon(1e-6));
        CHECK(std::fabs(i[0][1]) < 1e-6);
        CHECK(std::fabs(i[0][2]) < 1e-6);
        CHECK(std::fabs(i[1][2]) < 1e-6);
    }
    const AngleTriple unit{std::asinh(1.0), 1.0, 0.3};
    CHECK(indicatrix_induced_metric(unit, space)[1][1] == doctest::Approx(0.25).epsilon(1e-7));

    const Space doubled{validate_params(RawParams{4.0, 2.0, 0.25})};
    const Mat3 a = indicatrix_induced_metric(unit, space), b = indicatrix_induced_metric(unit, doubled);
    for (int k = 0; k < 3; ++k) CHECK(b[k][k] == doctest::Approx(a[k][k] / 4.0).epsilon(1e-6));
}
