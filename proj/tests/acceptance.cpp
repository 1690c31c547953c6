// One line per acceptance criterion; exit status 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "finsleroid/horizontal.hpp"
#include "finsleroid/tensors.hpp"
#include "finsleroid/verifier.hpp"

using namespace finsleroid;

namespace {

int failures = 0;

void line(int k, bool ok, const std::string& what) {
    std::printf("%s [%2d] %s\n", ok ? "PASS" : "FAIL", k, what.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[400];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Params set_a = validate_params(RawParams{});
const Params set_b = validate_params(RawParams{1.5, 3.0, 0.2});

std::vector<Vec4> random_tangents(const Space& s, int n, unsigned seed, double eta_max) {
    std::mt19937_64 rng(seed);
    const double am = 0.5 * std::numbers::pi - 0.05;
    std::uniform_real_distribution<double> le(std::log(1e-2), std::log(eta_max)),
        th(0.05, s.solution.theta_c() - 0.05), al(-am, am), bv(0.2, 5.0);
    std::vector<Vec4> out;
    for (int k = 0; k < n; ++k) {
        const AngleTriple a{std::exp(le(rng)), th(rng), al(rng) / std::sqrt(s.params().Chat) + s.params().Cstar};
        out.push_back(tangent_from_angles(a, bv(rng), s));
    }
    return out;
}

void metric_reconstruction() {
    double worst = 0.0;
    int bad_sig = 0, n = 0;
    for (const Params* p : {&set_a, &set_b}) {
        const Space s(*p);
        for (const Vec4& y : random_tangents(s, 200, 101, 6.0)) {
            const TensorBundle b = bundle_at(y, s, {false});
            worst = std::fmax(worst, max_abs_diff<4>(b.g, angle_form_metric(b, *p)) / max_abs<4>(b.g));
            int pos = 0;
            for (double e : symmetric_eigenvalues<4>(b.g)) pos += e > 0.0;
            bad_sig += pos != 1;
            ++n;
        }
    }
    line(1, worst < 1e-8 && bad_sig == 0,
         fmt("metric vs angle form: max rel %.2e (< 1e-8), signature (+,-,-,-) at %d/%d points, both sets", worst, n - bad_sig, n));
}

void indicatrix_metric() {
    const Space s(set_a);
    const double tc = s.solution.theta_c(), h2 = set_a.H * set_a.H;
    double diag = 0.0, off = 0.0;
    int n = 0;
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 12; ++b)
            for (int c = 0; c < 8; ++c) {
                const double eta = 1e-2 * std::pow(300.0, a / 15.0);
                const double theta = 0.05 + (tc - 0.1) * b / 11.0;
                const double alpha = -1.5 + 3.0 * c / 7.0;
                const Mat3 i = indicatrix_induced_metric({eta, theta, alpha / std::sqrt(set_a.Chat)}, s);
                const double sh = std::sinh(eta), st = std::sin(theta);
                const double want[3] = {1.0 / h2, sh * sh / h2, sh * sh * st * st / h2};
                for (int k = 0; k < 3; ++k) diag = std::fmax(diag, std::fabs(i[k][k] - want[k]) / want[k]);
                off = std::max({off, std::fabs(i[0][1]), std::fabs(i[0][2]), std::fabs(i[1][2])});
                ++n;
            }
    line(2, diag < 1e-6 && off < 1e-6,
         fmt("indicatrix metric on 16x12x8 grid (eta to 3): diagonal rel %.2e, off-diagonal %.2e (< 1e-6), %d points", diag, off, n));
}

void cartan_and_curvature() {
    double cart = 0.0, cy = 0.0;
    double curv[2] = {0.0, 0.0};
    int n = 0;
    int idx = 0;
    for (const Params* p : {&set_a, &set_b}) {
        const Space s(*p);
        for (const Vec4& y : random_tangents(s, 100, 202, 3.0)) {
            const TensorBundle b = bundle_at(y, s);
            const double norm = max_abs<4>(b.C);
            if (p == &set_a) {
                const Tensor3<4> model = cartan_expansion(b.angles, b, coefficients_at(b.angles, *p), *p);
                cart = std::fmax(cart, max_abs_diff<4>(b.C, model) / norm);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        double c = 0.0;
                        for (int k = 0; k < 4; ++k) c += b.C[i][j][k] * y[k];
                        cy = std::fmax(cy, std::fabs(c) / norm);
                    }
                ++n;
            }
            const Tensor4<4> model = constant_curvature_model(b, p->Tstar);
            curv[idx] = std::fmax(curv[idx], max_abs_diff<4>(b.Rhat, model) / max_abs<4>(model));
        }
        ++idx;
    }
    line(3, cart < 1e-5 && cy < 1e-6,
         fmt("Cartan expansion vs finite differences: rel %.2e (< 1e-5), |C y|/|C| %.2e (< 1e-6), %d points", cart, cy, n));
    line(4, curv[0] < 1e-4 && curv[1] < 1e-4 && set_a.Tstar != set_b.Tstar,
         fmt("constant indicatrix curvature: rel %.2e with 1-H^2 = %g, rel %.2e with 1-H^2 = %g (< 1e-4), 100 points each",
             curv[0], set_a.Tstar, curv[1], set_b.Tstar));
}

void report_criteria(const Report& r, const Report& rb) {
    int failed = 0;
    for (const IdentityRecord& rec : r.records) {
        if (!rec.pass) {
            ++failed;
            std::printf("     failing record %s residual %.3e tol %.1e\n", rec.id.c_str(), rec.max_residual, rec.tolerance);
        }
    }
    std::string controls;
    bool controls_ok = true;
    for (Perturbation k : {Perturbation::j_factor, Perturbation::r_factor, Perturbation::u_factor, Perturbation::f_factor}) {
        const Report pr = full_report(SamplingPlan{}, default_frame(), set_a, k);
        int f = 0;
        for (const IdentityRecord& rec : pr.records) f += !rec.pass;
        controls_ok = controls_ok && f >= 1;
        controls += fmt(" %s:%d", perturbation_name(k), f);
    }
    line(5, r.passed() && rb.passed() && controls_ok,
         fmt("total set report: %zu records, %d failing; second set overall %s; failing records under perturbation%s",
             r.records.size(), failed, rb.overall.c_str(), controls.c_str()));

    bool ode_ok = true;
    std::string ode;
    for (int k = 1; k <= 4; ++k) {
        const IdentityRecord* rec = r.find("ODE.5.58." + std::to_string(k));
        ode_ok = ode_ok && rec && rec->pass && rec->points >= 100 && rec->max_residual < 1e-7;
        if (rec) ode += fmt(" %.1e", rec->max_residual);
    }
    line(6, ode_ok, fmt("derivative laws vs finite differences (V, r, U, f):%s (< 1e-7), %ld points each", ode.c_str(),
                        r.find("ODE.5.58.1") ? r.find("ODE.5.58.1")->points : 0L));
}

void regularity(const Report& r) {
    const IdentityRecord* reg = r.find("REG.5.1");
    line(9, reg && reg->pass && r.class_one.zero_found,
         fmt("regularity: max 4th-difference ratio %.3g (bound %g) on eta in [1e-3, 10]; class I stub with P = %g has a real zero "
             "at eta0 = %.12f (closed form %.12f)",
             reg ? reg->max_residual : NAN, reg ? reg->tolerance : NAN, r.class_one_P, r.class_one.eta0_scan,
             r.class_one.eta0_closed));
}

void horizontal() {
    const Solution sol(set_a);
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> th(0.05, sol.theta_c() - 0.05), al(-3.1, 3.1), sc(0.2, 5.0);
    double curv = 0.0, form = 0.0, det = 0.0, min_det = HUGE_VAL, min_eig = HUGE_VAL;
    for (int k = 0; k < 100; ++k) {
        const double theta = th(rng), alpha = al(rng), v3 = sc(rng);
        const double vp = v3 * sol.fcheck(theta).value / set_a.C11;
        const HorizontalBundle b = horizontal_bundle({vp * std::sin(alpha), vp * std::cos(alpha), v3}, sol);
        curv = std::fmax(curv, horizontal_curvature_check(b, set_a));
        form = std::fmax(form, horizontal_angle_form_check(b, set_a));
        det = std::fmax(det, determinant_check(b, set_a));
        min_det = std::fmin(min_det, determinant<3>(b.R));
        for (double e : symmetric_eigenvalues<3>(b.R)) min_eig = std::fmin(min_eig, e);
    }
    RawParams raw = set_a.raw();
    raw.C1 = 2.0;
    const Space scaled(validate_params(raw));
    double sec = 0.0;
    std::string ks;
    for (double lambda : {0.5, 1.0, 2.0}) {
        const SectionCurvature c = section_curvature(lambda, scaled);
        sec = std::fmax(sec, std::fabs(c.curvature - c.expected) / c.expected);
        ks += fmt(" %.6g", c.curvature * c.radius.radius * c.radius.radius);
    }
    line(7, curv < 1e-4 && form < 1e-6 && det < 1e-6 && min_det > 0.0 && min_eig > 0.0 && sec < 1e-4,
         fmt("horizontal section: curvature identity %.1e (< 1e-4), angle form %.1e, determinant %.1e (< 1e-6), min det %.3g, "
             "min eigenvalue %.3g; R^2 K for lambda 0.5, 1, 2:%s, max rel %.1e (< 1e-4)",
             curv, form, det, min_det, min_eig, ks.c_str(), sec));
}

void round_trip() {
    const Space s(set_a);
    std::mt19937_64 rng(404);
    const double am = 0.5 * std::numbers::pi - 0.05;
    std::uniform_real_distribution<double> le(std::log(1e-2), std::log(4.0)), th(0.05, s.solution.theta_c() - 0.05),
        al(-am, am), rot(-std::numbers::pi, std::numbers::pi);
    double angle = 0.0, homog = 0.0, rotation = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const AngleTriple a{std::exp(le(rng)), th(rng), al(rng) / std::sqrt(set_a.Chat)};
        const Vec4 y = tangent_from_angles(a, 1.0, s);
        const TangentAngles t = angles_from_tangent(y, s);
        angle = std::max({angle, std::fabs(t.angles.eta - a.eta) / std::fmax(1.0, a.eta), std::fabs(t.angles.theta - a.theta),
                           std::fabs(t.angles.phi - a.phi)});
        for (double sc : {1e-3, 0.5, 10.0, 1e3}) {
            const double F = metric_function({sc * y[0], sc * y[1], sc * y[2], sc * y[3]}, s);
            homog = std::fmax(homog, std::fabs(F - sc * t.F) / (sc * t.F));
        }
        const double phi = rot(rng), cn = std::cos(phi), sn = std::sin(phi);
        const Vec4 r{y[0], cn * y[1] - sn * y[2], sn * y[1] + cn * y[2], y[3]};
        rotation = std::fmax(rotation, std::fabs(metric_function(r, s) - t.F) / t.F);
    }
    line(8, angle < 1e-9 && homog < 1e-12 && rotation < 1e-12,
         fmt("angle round trip %.1e (< 1e-9), homogeneity %.1e, (i,j)-rotation %.1e (< 1e-12), 1000 points", angle, homog,
             rotation));
}

}  // namespace

int main() {
    metric_reconstruction();
    indicatrix_metric();
    cartan_and_curvature();

    ::setenv("FINSLEROID_THREADS", "1", 1);
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = full_report(SamplingPlan{}, default_frame(), set_a);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ::unsetenv("FINSLEROID_THREADS");
    const Report rb = full_report(SamplingPlan{}, default_frame(), set_b);

    report_criteria(r, rb);
    horizontal();
    round_trip();
    regularity(r);
    line(10, secs < 60.0, fmt("full verification single-threaded at the default plan: %.2f s (< 60 s)", secs));

    std::printf("%s\n", failures == 0 ? "all criteria pass" : "some criteria fail");
    return failures == 0 ? 0 : 1;
}
