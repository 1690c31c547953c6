#include "finsleroid/verifier.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "finsleroid/errors.hpp"
#include "finsleroid/horizontal.hpp"
#include "finsleroid/inversion.hpp"
#include "finsleroid/parallel.hpp"
#include "finsleroid/tensors.hpp"

namespace finsleroid {

namespace {

constexpr double kAnalyticTol = 1e-9;
constexpr double kOneLayerTol = 1e-6;
constexpr double kTwoLayerTol = 1e-4;
constexpr double kInf = std::numeric_limits<double>::infinity();

// NaN must never hide a failure.
double sane(double r) { return std::isnan(r) ? kInf : std::fabs(r); }

// |sum of terms| over the largest term magnitude (or floor).
double res(std::initializer_list<double> terms, double floor = 0.0) {
    double sum = 0.0, mx = floor;
    for (double t : terms) {
        sum += t;
        mx = std::max(mx, std::fabs(t));
    }
    if (std::isnan(sum)) return kInf;
    if (mx == 0.0) return 0.0;
    return std::fabs(sum) / mx;
}

double max_of(std::initializer_list<double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, sane(x));
    return m;
}

std::vector<double> log_grid(int n, double lo, double hi) {
    std::vector<double> g;
    if (n <= 0) return g;
    if (n == 1) return {std::sqrt(lo * hi)};
    for (int i = 0; i < n; ++i) g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return g;
}

std::vector<double> lin_grid(int n, double lo, double hi) {
    std::vector<double> g;
    if (n <= 0) return g;
    if (n == 1) return {0.5 * (lo + hi)};
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

double phi_of_alpha(double alpha, const Params& p) { return alpha / std::sqrt(p.Chat) + p.Cstar; }

std::vector<double> phi_grid(const SamplingPlan& plan, const Params& p) {
    const double half = 0.5 * std::numbers::pi - plan.alpha_margin;
    std::vector<double> g;
    for (double a : lin_grid(plan.n_phi, -half, half)) g.push_back(phi_of_alpha(a, p));
    return g;
}

// Deterministic uniform doubles independent of the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * ((gen_() >> 11) * 0x1.0p-53); }

private:
    std::mt19937_64 gen_;
};

// ---------------------------------------------------------------- coefficient points

using CoeffArr = std::array<double, 15>;

CoeffArr pack(const CoeffSet& c) {
    return {c.u2, c.u3, c.u6, c.z2, c.z3, c.z4, c.r1, c.r2, c.r5, c.L2, c.L3, c.L, c.z2check, c.z3check, c.L2check};
}

CoeffSet unpack(const CoeffArr& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10], a[11], a[12], a[13], a[14]};
}

using CoeffFn = std::function<CoeffSet(const AngleTriple&)>;

struct PointData {
    AngleTriple a;
    CoeffSet c, de, dt, dp;
    double V, r, U, f;
    double eta_V, eta_VV, V_r, V_rr, eta_r;
    double theta_f, theta_ff, U_f, U_ff;
    PhiProfile ph;
    double z, c2, w2;
};

PointData make_point(const AngleTriple& a, const CoeffFn& coeff, const Solution& s) {
    const Params& p = s.params();
    PointData d{};
    d.a = a;
    d.c = coeff(a);
    const double steps[3] = {1e-3 * std::min(1.0, a.eta), 1e-3 * std::min({1.0, a.theta, s.theta_c() - a.theta}),
                             1e-3};
    CoeffSet* outs[3] = {&d.de, &d.dt, &d.dp};
    for (int k = 0; k < 3; ++k) {
        auto at = [&](double shift) {
            AngleTriple b = a;
            (k == 0 ? b.eta : k == 1 ? b.theta : b.phi) += shift;
            return pack(coeff(b));
        };
        const double h = steps[k];
        const CoeffArr p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
        CoeffArr out{};
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h);
        *outs[k] = unpack(out);
    }

    const Derivs V = s.vcheck(a.eta), r = s.rcheck(a.eta);
    const Derivs U = s.ucheck(a.theta), f = s.fcheck(a.theta);
    d.V = V.value;
    d.r = r.value;
    d.U = U.value;
    d.f = f.value;
    d.eta_V = 1.0 / V.d1;
    d.eta_VV = -V.d2 / (V.d1 * V.d1 * V.d1);
    d.V_r = V.d1 / r.d1;
    d.V_rr = (V.d2 - V.d1 * r.d2 / r.d1) / (r.d1 * r.d1);
    d.eta_r = 1.0 / r.d1;
    d.theta_f = 1.0 / f.d1;
    d.theta_ff = -f.d2 / (f.d1 * f.d1 * f.d1);
    d.U_f = U.d1 / f.d1;
    d.U_ff = (U.d2 - U.d1 * f.d2 / f.d1) / (f.d1 * f.d1);
    const double t = std::tan(std::sqrt(p.Chat) * (a.phi - p.Cstar));
    d.ph = phi_and_Z(t, p);
    d.z = d.r / d.U;
    d.c2 = d.f / d.ph.Z;
    d.w2 = d.c2 * d.z;
    return d;
}

CoeffSet extracted_coefficients(const AngleTriple& a, const Space& space) {
    const Vec4 y = tangent_from_angles(a, 1.0, space);
    BundleOptions opt;
    opt.with_cartan = false;
    const TensorBundle b = bundle_at(y, space, opt);
    return coeffset_from_general(extract_coefficients(b), a, space.params());
}

// ---------------------------------------------------------------- identity catalog

struct Ctx {
    const PointData& d;
    const Params& p;
    double sh, ch, st, ct, H2;
    double us, zs, rs;  // family magnitudes, floors for vanishing statements
};

struct PointIdentity {
    const char* id;
    const char* ref;
    const char* group;
    bool fd;  // uses finite-difference derivatives of coefficients
    double (*fn)(const Ctx&);
    const char* note;
};

// clang-format off
const std::vector<PointIdentity>& catalog() {
    static const std::vector<PointIdentity> list = {
        {"S1.3.13", "(3.13)", "S1", true, [](const Ctx& k) {
            const auto& d = k.d;
            return max_of({res({d.dt.u2}, k.us), res({d.dp.u2}, k.us), res({d.dt.u6}, k.us), res({d.dp.u6}, k.us)});
        }, ""},
        {"S1.3.14", "(3.14)", "S1", true, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({k.d.de.u2, c.u2 * c.u2 / k.H2, -c.u2 * c.u6 / k.H2, -1.0});
        }, ""},
        {"S1.3.15", "(3.15)", "S1", true, [](const Ctx& k) {
            const auto& d = k.d;
            return max_of({res({d.dt.z4}, k.zs), res({d.dp.z4}, k.zs),
                           res({d.dt.r5 * k.st, d.c.r5 * k.ct}, k.rs), res({d.dp.r5}, k.rs)});
        }, ""},
        {"S2.3.16", "(3.16)", "S2", true, [](const Ctx& k) {
            const auto& d = k.d;
            return max_of({res({d.dp.z3}, k.zs),
                           res({d.de.z2 * k.sh, 2.0 * d.c.z2 * k.ch}, k.zs * k.ch),
                           res({d.de.z3 * k.sh, 2.0 * d.c.z3 * k.ch}, k.zs * k.ch)});
        }, ""},
        {"S2.3.17", "(3.17)", "S2", true, [](const Ctx& k) {
            const auto& c = k.d.c;
            const double s2 = k.sh * k.sh;
            return res({k.d.dt.z2, -c.z4 * c.u2 * k.sh / k.H2, c.z2 * c.z2 * s2 / k.H2, -c.z2 * c.z3 * s2 / k.H2, -1.0});
        }, ""},
        {"S2.3.18", "(3.18)", "S2", true, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({k.d.de.z4 * k.sh, c.z4 * k.ch, c.z4 * c.u6 * k.sh / k.H2, -c.z4 * c.z4 * k.sh * k.sh / k.H2, 1.0});
        }, ""},
        {"S2.3.19", "(3.19)", "S2", true, [](const Ctx& k) {
            const auto& d = k.d;
            const double floor = std::max(std::fabs(d.c.z2check), std::fabs(d.c.z3check));
            return max_of({res({d.de.z2check}, floor), res({d.de.z3check}, floor)});
        }, ""},
        {"S3.3.20", "(3.20)", "S3", true, [](const Ctx& k) {
            const auto& d = k.d;
            return max_of({res({d.de.r2 * k.sh * k.sh, 2.0 * d.c.r2 * k.sh * k.ch}, k.rs * k.sh * k.ch),
                           res({d.dt.r2 * k.st * k.st, 2.0 * d.c.r2 * k.st * k.ct}, k.rs * k.st),
                           res({d.dp.r1}, k.rs)});
        }, ""},
        {"S3.3.21", "(3.21)", "S3", true, [](const Ctx& k) {
            const auto& c = k.d.c;
            const double s2 = k.sh * k.sh;
            return res({k.d.dt.r1 * k.st, -c.r1 * c.r1 * s2 * k.st * k.st / k.H2, c.r1 * c.z3 * s2 * k.st / k.H2,
                        c.r1 * k.ct, c.r5 * c.u2 * k.sh * k.st / k.H2, 1.0});
        }, "corrected form: z3 sinh^2(eta) sin(theta)/H^2 and r5 u2 sinh(eta) sin(theta)/H^2"},
        {"S3.3.22", "(3.22)", "S3", true, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({k.d.de.r5 * k.sh * k.st, c.r5 * c.u6 * k.sh * k.st / k.H2,
                        -c.r5 * c.r5 * k.sh * k.sh * k.st * k.st / k.H2, c.r5 * k.ch * k.st, 1.0});
        }, ""},

        {"SYM.3.33a", "(3.33)", "SYM", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.z4 * k.sh * k.sh, -c.u3 * k.sh, 2.0 * k.H2 * k.ch});
        }, ""},
        {"SYM.3.33b", "(3.33)", "SYM", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.r5 * k.sh * k.sh * k.st, -c.u2 * k.sh, 2.0 * k.H2 * k.ch});
        }, ""},
        {"SYM.3.34", "(3.34)", "SYM", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            const double s2 = k.sh * k.sh;
            return res({c.z2 * s2 * k.st, -c.r1 * s2 * k.st * k.st, -2.0 * k.H2 * k.ct});
        }, ""},
        {"SYM.3.35", "(3.35)", "SYM", true, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.de.r1 * k.sh * k.sh, 2.0 * d.c.r1 * k.sh * k.ch}, k.rs * k.sh * k.ch);
        }, ""},

        {"SG1.3.24", "(3.24)", "SG1", false, [](const Ctx& k) {
            const auto& d = k.d;
            const double vr2 = d.V_r * d.V_r;
            return res({d.eta_VV * vr2, -d.c.u6 * d.eta_V * d.eta_V * vr2 / k.H2, 2.0 * d.eta_V * vr2 / d.V,
                        d.eta_V * d.V_rr});
        }, ""},
        {"SG1.3.25", "(3.25)", "SG1", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u2 * k.sh * k.sh * k.st * k.st * d.ph.phi_t * d.ph.phi_t / k.H2,
                        -d.eta_V * d.V_r * d.U_f * d.ph.Z_tt * d.w2});
        }, ""},
        {"SG1.3.26", "(3.26)", "SG1", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u3 * k.sh * k.sh * d.theta_f * d.theta_f / k.H2, -d.eta_V * d.z * d.U_ff * d.V_r});
        }, ""},
        {"SG2.3.27", "(3.27)", "SG2", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.theta_ff, -d.c.z3 * k.sh * k.sh * d.theta_f * d.theta_f / k.H2,
                        2.0 * d.U_f * d.theta_f / d.U});
        }, ""},
        {"SG2.3.28", "(3.28)", "SG2", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.z2 * k.sh * k.sh * k.st * k.st * d.ph.phi_t * d.ph.phi_t / k.H2,
                        -d.theta_f * d.c2 * d.ph.Z_tt});
        }, ""},
        {"SG2.3.29", "(3.29)", "SG2", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.z4 * k.sh * d.eta_V * d.z * d.V_r / k.H2, -d.z * d.V_r / d.V, 1.0 / d.U});
        }, ""},
        {"SG3.3.30", "(3.30)", "SG3", false, [](const Ctx& k) {
            const auto& d = k.d;
            const double pt2 = d.ph.phi_t * d.ph.phi_t;
            return res({d.ph.phi_tt, 2.0 * d.ph.Z_t * d.ph.phi_t / d.ph.Z,
                        -d.c.r2 * k.sh * k.sh * k.st * k.st * pt2 / k.H2}, pt2);
        }, ""},
        {"SG3.3.31", "(3.31)", "SG3", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.r1 * k.sh * k.sh * k.st * d.theta_f / k.H2, -d.U_f / d.U, 1.0 / d.f});
        }, ""},
        {"SG3.3.32", "(3.32)", "SG3", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.r5 * k.sh * k.st * d.eta_V * d.r * d.V_r / k.H2, -d.r * d.V_r / d.V, 1.0});
        }, ""},

        {"SEP.4.9a", "(4.9)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.theta_f * d.f, -d.c.z2 * k.p.C * k.sh * k.sh * k.st * k.st / k.H2});
        }, ""},
        {"SEP.4.9b", "(4.9)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.ph.phi_t * d.ph.phi_t, -k.p.C * d.ph.Z_tt / d.ph.Z});
        }, ""},
        {"SEP.4.10", "(4.10)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({theta_profile(d.a.theta, k.p).R2, -d.c.z2 * k.sh * k.sh * k.st / k.H2});
        }, ""},
        {"SEP.4.11", "(4.11)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.theta_f * d.f, -theta_profile(d.a.theta, k.p).R2 * k.p.C * k.st});
        }, ""},
        {"SEP.4.12", "(4.12)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({k.p.C * d.U_ff * k.st * k.st, -d.U_f * d.f * d.theta_f * d.theta_f});
        }, ""},
        {"SEP.4.13", "(4.13)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u2 * k.sh * k.sh * k.st * k.st / k.H2, -d.eta_V * d.V_r * d.r * d.U_f * d.f / (d.U * k.p.C)});
        }, ""},
        {"SEP.4.14a", "(4.14)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u2 * k.sh * k.sh / k.H2, -k.p.C7 * d.eta_r * d.r});
        }, ""},
        {"SEP.4.14b", "(4.14)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.U_f * d.f / (d.U * k.p.C), -k.p.C7 * k.st * k.st});
        }, ""},
        {"SEP.4.16", "(4.16)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u2 * d.eta_r * d.r / k.H2, -2.0 * k.ch / k.sh * d.eta_r * d.r, -d.V_r * d.r / d.V, 1.0});
        }, ""},
        {"SEP.4.17", "(4.17)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.V_r * d.r / d.V, k.sh * k.sh / (k.p.C7 * k.H2), 1.0 / (k.p.C7 * k.p.P), -1.0});
        }, ""},
        {"SEP.4.19", "(4.19)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.c.u2 * k.sh / k.H2, -eta_profile(d.a.eta, k.p).R1});
        }, ""},
        {"SEP.5.7", "(5.7)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.eta_r * d.r, -k.p.P * eta_profile(d.a.eta, k.p).R1 * k.sh});
        }, ""},
        {"SEP.5.8", "(5.8)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.eta_r * d.eta_r / k.H2, d.V_rr / d.V});
        }, ""},
        {"SEP.5.17", "(5.17)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            const double R2 = theta_profile(d.a.theta, k.p).R2;
            return max_of({res({d.theta_f * d.f, -R2 * k.st / k.p.Chat}),
                           res({d.U_f * d.f / d.U, -k.p.T * k.st * k.st})});
        }, ""},
        {"SEP.5.20", "(5.20)", "SEP", false, [](const Ctx& k) {
            const auto& d = k.d;
            return res({d.U_ff, -d.theta_f * d.theta_f * k.p.T * k.p.Chat * d.U});
        }, ""},
        {"SEP.5.27", "(5.27)", "SEP", false, [](const Ctx& k) {
            const ThetaLogDerivatives t = theta_derivatives(k.d.a.theta, k.p);
            const double L9 = theta_profile(k.d.a.theta, k.p).L9;
            return res({t.dlnI, -t.dlnY2, -std::sqrt(L9) / k.st});
        }, ""},

        {"CURV.3.40", "(3.40)", "CURV", false, [](const Ctx& k) {
            return res({k.d.c.u3, -k.d.c.u2});
        }, ""},
        {"CURV.3.41", "(3.41)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L2 * c.u6, -2.0 * c.L2 * c.L2, -c.L * c.z3 * k.sh, c.L * c.L});
        }, ""},
        {"CURV.3.43", "(3.43)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L2 * c.L2 / k.H2, -c.L2 * c.u6 / k.H2, -k.p.Tstar});
        }, "T* = -((L2)^2 + L2(u6 - 2 L2))/H^2 against 1 - H^2"},
        {"CURV.3.45", "(3.45)", "CURV", false, [](const Ctx& k) {
            return res({k.d.c.z4, -k.d.c.r5 * k.st});
        }, ""},
        {"CURV.3.46", "(3.46)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L * c.z3 * k.sh, k.H2 * k.p.Tstar, c.L2 * c.L2, -c.L * c.L});
        }, ""},
        {"CURV.3.48", "(3.48)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L2check * c.L2check, -c.L2check * c.z3check,
                        -(k.H2 * k.p.Tstar + c.L2 * c.L2) * k.sh * k.sh});
        }, ""},
        {"CURV.3.49", "(3.49)", "CURV", true, [](const Ctx& k) {
            const auto& d = k.d;
            const double target = k.H2 / k.p.P;
            const double lhs = res({d.dt.z2check, d.c.z2check * d.c.z2check / k.H2,
                                    -d.c.z2check * d.c.z3check / k.H2, target});
            const double rhs = res({k.sh * k.sh, d.c.u2 * d.c.u2 * k.sh * k.sh / k.H2,
                                    -2.0 * k.ch * d.c.u2 * k.sh, target});
            return max_of({lhs, rhs});
        }, "both sides evaluated against -H^2/P on the product grid"},
        {"CURV.4.2", "(4.2)", "CURV", true, [](const Ctx& k) {
            const auto& d = k.d;
            const double coth = k.ch / k.sh;
            return res({d.c.L2 * d.de.L2, -k.H2 * (k.H2 - 1.0) * coth, d.c.L2 * d.c.L2 * coth});
        }, ""},
        {"CURV.4.3", "(4.3)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L2 * c.L2 / k.H2, -(k.H2 - 1.0), k.H2 * (1.0 - k.p.P) / (k.p.P * k.sh * k.sh)});
        }, ""},
        {"CURV.4.4", "(4.4)", "CURV", false, [](const Ctx& k) {
            const double x = k.sh * k.d.c.L2 / k.H2;
            return res({x * x, -eta_profile(k.d.a.eta, k.p).Lhat});
        }, ""},
        {"CURV.4.6", "(4.6)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            return res({c.L2check * c.L2check, -c.L2check * c.z3check, -(1.0 - 1.0 / k.p.P) * k.H2 * k.H2});
        }, ""},
        {"CURV.4.8", "(4.8)", "CURV", false, [](const Ctx& k) {
            const auto& c = k.d.c;
            const double h4 = k.H2 * k.H2;
            return res({c.L2check * c.L2check / h4, -c.L2check * c.z3check / h4, -(1.0 - 1.0 / k.p.P)});
        }, ""},
    };
    return list;
}
// clang-format on

struct CatalogResult {
    std::vector<double> max_res;
    std::vector<long> points;
};

// Evaluates the catalog over the angle grid: closed-form coefficients everywhere,
// extracted coefficients where eta <= plan.eta_max_tangent. Returns per-identity
// maxima over both sources.
CatalogResult run_catalog(const SamplingPlan& plan, const Solution& s, long* n_closed, long* n_extracted) {
    const Params& p = s.params();
    const auto& cat = catalog();
    CatalogResult out;
    out.max_res.assign(cat.size(), 0.0);
    out.points.assign(cat.size(), 0);
    *n_closed = *n_extracted = 0;

    const auto etas = log_grid(plan.n_eta, plan.eta_min, plan.eta_max);
    const auto thetas = lin_grid(plan.n_theta, plan.theta_margin, s.theta_c() - plan.theta_margin);
    const auto phis = phi_grid(plan, p);
    std::vector<std::pair<AngleTriple, bool>> tasks;  // (angles, extracted?)
    for (double e : etas)
        for (double t : thetas)
            for (double f : phis) tasks.push_back({{e, t, f}, false});
    for (double e : etas) {
        if (e > plan.eta_max_tangent) continue;
        for (double t : thetas)
            for (double f : phis) tasks.push_back({{e, t, f}, true});
    }
    if (tasks.empty()) return out;

    const Space space(p, default_frame(), s.perturbation());
    const CoeffFn closed = [&p](const AngleTriple& a) { return coefficients_at(a, p); };
    const CoeffFn extracted = [&space](const AngleTriple& a) { return extracted_coefficients(a, space); };

    std::vector<std::vector<double>> per(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const auto& [a, ex] = tasks[i];
        std::vector<double>& r = per[i];
        r.assign(cat.size(), kInf);
        PointData d;
        try {
            d = make_point(a, ex ? extracted : closed, s);
        } catch (const Error&) {
            return;  // every identity fails at this point
        }
        const double us = std::max(std::fabs(d.c.u2), std::fabs(d.c.u6));
        const double zs = std::max({std::fabs(d.c.z2), std::fabs(d.c.z3), std::fabs(d.c.z4)});
        const double rs = std::max({std::fabs(d.c.r1), std::fabs(d.c.r2), std::fabs(d.c.r5)});
        const Ctx k{d, p, std::sinh(a.eta), std::cosh(a.eta), std::sin(a.theta), std::cos(a.theta), p.H * p.H,
                    us, zs, rs};
        for (std::size_t j = 0; j < cat.size(); ++j) r[j] = sane(cat[j].fn(k));
    });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        (tasks[i].second ? *n_extracted : *n_closed) += 1;
        for (std::size_t j = 0; j < cat.size(); ++j) {
            out.max_res[j] = std::max(out.max_res[j], per[i][j]);
            out.points[j] += 1;
        }
    }
    return out;
}

IdentityRecord make_record(const std::string& id, const std::string& ref, const std::string& group, double residual,
                           double tol, long points, const std::string& note = "") {
    IdentityRecord r;
    r.id = id;
    r.equation_ref = ref;
    r.group = group;
    r.max_residual = sane(residual);
    r.tolerance = tol;
    r.points = points;
    r.pass = r.max_residual < tol;
    r.note = note;
    return r;
}

std::vector<IdentityRecord> catalog_records(const SamplingPlan& plan, const Solution& s,
                                            const std::vector<std::string>& groups) {
    long nc = 0, nx = 0;
    const CatalogResult cr = run_catalog(plan, s, &nc, &nx);
    const auto& cat = catalog();
    std::vector<IdentityRecord> out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "closed-form coefficients at %ld points, extracted at %ld points (eta <= %g)", nc,
                  nx, plan.eta_max_tangent);
    for (std::size_t j = 0; j < cat.size(); ++j) {
        if (std::find(groups.begin(), groups.end(), cat[j].group) == groups.end()) continue;
        if (cr.points[j] == 0) continue;
        std::string note = buf;
        if (*cat[j].note) note = std::string(cat[j].note) + "; " + note;
        out.push_back(make_record(cat[j].id, cat[j].ref, cat[j].group, cr.max_res[j],
                                  cat[j].fd ? kOneLayerTol : kAnalyticTol, cr.points[j], note));
    }
    return out;
}

// ---------------------------------------------------------------- random samples

std::vector<AngleTriple> random_angles(const SamplingPlan& plan, const Solution& s, std::uint64_t salt,
                                       std::vector<double>* scales) {
    Rng rng(plan.seed ^ salt);
    std::vector<AngleTriple> out;
    const double half = 0.5 * std::numbers::pi - plan.alpha_margin;
    for (int i = 0; i < plan.n_random; ++i) {
        AngleTriple a;
        a.eta = std::exp(rng.uniform(std::log(plan.eta_min), std::log(plan.eta_max_tangent)));
        a.theta = rng.uniform(plan.theta_margin, s.theta_c() - plan.theta_margin);
        a.phi = phi_of_alpha(rng.uniform(-half, half), s.params());
        out.push_back(a);
        if (scales) scales->push_back(rng.uniform(0.5, 2.0));
    }
    return out;
}

double rel_tensor3(const Tensor3<4>& a, const Tensor3<4>& b) {
    const double s = max_abs<4>(b);
    return s > 0.0 ? max_abs_diff<4>(a, b) / s : max_abs_diff<4>(a, b);
}

double rel_tensor4(const Tensor4<4>& a, const Tensor4<4>& b) {
    const double s = max_abs<4>(b);
    return s > 0.0 ? max_abs_diff<4>(a, b) / s : max_abs_diff<4>(a, b);
}

double rel_mat(const Mat4& a, const Mat4& b) {
    const double s = max_abs<4>(b);
    return s > 0.0 ? max_abs_diff<4>(a, b) / s : max_abs_diff<4>(a, b);
}

// Particular expansions of eta_ij, theta_ij, phi_ij rebuilt from the frame and coefficients.
std::array<Mat4, 3> particular_expansions(const TensorBundle& b, const CoeffSet& c, const Params& p) {
    const double sh = std::sinh(b.angles.eta), st = std::sin(b.angles.theta), h2 = p.H * p.H;
    const Vec4& e = b.jets.eta.g;
    const Vec4& t = b.jets.theta.g;
    const Vec4& f = b.jets.phi.g;
    std::array<Mat4, 3> x{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double pp = f[i] * f[j], tt = t[i] * t[j], ee = e[i] * e[j];
            x[0][i][j] = -(b.l[i] * e[j] + b.l[j] * e[i]) / b.F +
                         (c.u2 * sh * sh * st * st * pp + c.u3 * sh * sh * tt + c.u6 * ee) / h2;
            x[1][i][j] = -(b.l[i] * t[j] + b.l[j] * t[i]) / b.F +
                         (c.z2 * sh * sh * st * st * pp + c.z3 * sh * sh * tt + c.z4 * sh * (e[i] * t[j] + e[j] * t[i])) / h2;
            x[2][i][j] = -(b.l[i] * f[j] + b.l[j] * f[i]) / b.F +
                         (c.r1 * sh * sh * st * (f[i] * t[j] + f[j] * t[i]) + c.r2 * sh * sh * st * st * pp +
                          c.r5 * sh * st * (f[i] * e[j] + f[j] * e[i])) / h2;
        }
    return x;
}

std::array<Mat4, 3> particular_at(const Vec4& y, const Space& space) {
    BundleOptions opt;
    opt.with_cartan = false;
    const TensorBundle b = bundle_at(y, space, opt);
    return particular_expansions(b, coefficients_at(b.angles, space.params()), space.params());
}

// Skew part of the y-derivative of the rebuilt expansions over its magnitude.
double integrability_residual(const Vec4& y, const TensorBundle& b, const Space& space) {
    const double h = default_fd_step(y, b.jets, 4);
    std::array<std::array<Mat4, 3>, 4> d{};  // d[n][k][i][j]
    for (int n = 0; n < 4; ++n) {
        auto at = [&](double s) {
            Vec4 x = y;
            x[n] += s;
            return particular_at(x, space);
        };
        const auto p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    d[n][k][i][j] = (8.0 * (p1[k][i][j] - m1[k][i][j]) - (p2[k][i][j] - m2[k][i][j])) / (12.0 * h);
    }
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        double scale = 0.0, skew = 0.0;
        for (int n = 0; n < 4; ++n)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    scale = std::max(scale, std::fabs(d[n][k][i][j]));
                    skew = std::max(skew, std::fabs(d[n][k][i][j] - d[j][k][i][n]));
                }
        worst = std::max(worst, scale > 0.0 ? skew / scale : skew);
    }
    return worst;
}

struct TensorSample {
    double metric, signature, recon_eta, recon_theta, recon_phi, nullify, integrability;
    double cartan, cartan_y, curvature, frame_expansion;
};

TensorSample tensor_sample(const Vec4& y, const Space& space) {
    const Params& p = space.params();
    const TensorBundle b = bundle_at(y, space);
    TensorSample r{};
    r.metric = rel_mat(angle_form_metric(b, p), b.g);
    const Vec4 ev = symmetric_eigenvalues<4>(b.g);
    r.signature = (ev[0] < 0.0 && ev[1] < 0.0 && ev[2] < 0.0 && ev[3] > 0.0) ? 0.0 : 1.0;

    const CoeffSet c = coefficients_at(b.angles, p);
    const auto x = particular_expansions(b, c, p);
    r.recon_eta = rel_mat(x[0], b.jets.eta.h);
    r.recon_theta = rel_mat(x[1], b.jets.theta.h);
    r.recon_phi = rel_mat(x[2], b.jets.phi.h);

    const GeneralCoeffs gc = extract_coefficients(b);
    auto ratio = [](std::initializer_list<double> zero, std::initializer_list<double> live) {
        double z = 0.0, l = 0.0;
        for (double v : zero) z = std::max(z, std::fabs(v));
        for (double v : live) l = std::max(l, std::fabs(v));
        return l > 0.0 ? z / l : z;
    };
    r.nullify = max_of({ratio({gc.u[1], gc.u[4], gc.u[5]}, {gc.u[2], gc.u[3], gc.u[6]}),
                        ratio({gc.z[1], gc.z[5], gc.z[6]}, {gc.z[2], gc.z[3], gc.z[4]}),
                        ratio({gc.r[3], gc.r[4], gc.r[6]}, {gc.r[1], gc.r[5]})});
    r.integrability = integrability_residual(y, b, space);

    const Tensor3<4> ce = cartan_expansion(b.angles, b, c, p);
    r.cartan = rel_tensor3(ce, b.C);
    double cy = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int n = 0; n < 4; ++n) s += b.C[i][j][n] * y[n];
            cy = std::max(cy, std::fabs(s));
        }
    r.cartan_y = cy / (max_abs<4>(b.C) * std::max({std::fabs(y[0]), std::fabs(y[1]), std::fabs(y[2]), std::fabs(y[3])}));
    r.curvature = rel_tensor4(b.Rhat, constant_curvature_model(b, p.Tstar));
    r.frame_expansion = rel_tensor4(curvature_frame_expansion(b, c, p), curvature_hat(ce, b.ginv));
    return r;
}

// ---------------------------------------------------------------- horizontal samples

struct HorizontalSample {
    double curvature, angle_form, det, pd, r_w3, r_wperp, euler, f_second;
};

HorizontalSample horizontal_sample(const Vec3& v, const Solution& s) {
    const Params& p = s.params();
    const HorizontalBundle b = horizontal_bundle(v, s);
    HorizontalSample r{};
    r.curvature = horizontal_curvature_check(b, p);
    r.angle_form = horizontal_angle_form_check(b, p);
    r.det = determinant_check(b, p);
    r.pd = symmetric_eigenvalues<3>(b.R)[0] > 0.0 ? 0.0 : 1.0;
    const double vp = std::hypot(v[0], v[1]);
    const double U = b.r / v[2];
    const double w3 = r_w3_closed_form(v, p), wp = r_wperp_closed_form(v, p);
    r.r_w3 = std::fabs(b.r_a[2] - w3) / std::max(std::fabs(w3), U);
    const double rwp = (v[0] * b.r_a[0] + v[1] * b.r_a[1]) / vp;
    r.r_wperp = std::fabs(rwp - wp) / std::max(std::fabs(wp), U);
    r.euler = res({v[0] * b.r_a[0], v[1] * b.r_a[1], v[2] * b.r_a[2], -b.r});
    const Jet3& f = b.jets.f;
    const double target = 3.0 * vp * vp * p.C11 * p.C11 / (v[2] * v[2] * v[2] * v[2]);
    r.f_second = res({f.g[2] * f.g[2], f.v * f.h[2][2], -target});
    return r;
}

template <class Sample, class Field>
double max_field(const std::vector<Sample>& v, Field Sample::*field) {
    double m = 0.0;
    for (const auto& s : v) m = std::max(m, sane(s.*field));
    return m;
}

}  // namespace

// ================================================================ public

bool SamplingPlan::empty() const {
    return n_eta * n_theta * n_phi == 0 && n_random == 0 && n_ode == 0 && ind_eta * ind_theta * ind_phi == 0 &&
           lambdas.empty();
}

SamplingPlan empty_plan() {
    SamplingPlan p;
    p.n_eta = p.n_theta = p.n_phi = 0;
    p.n_random = 0;
    p.n_ode = 0;
    p.ind_eta = p.ind_theta = p.ind_phi = 0;
    p.lambdas.clear();
    return p;
}

const IdentityRecord* Report::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

std::vector<IdentityRecord> verify_ode_laws(const SamplingPlan& plan, const Solution& s) {
    std::vector<IdentityRecord> out;
    if (plan.n_ode <= 0) return out;
    const Params& p = s.params();
    const auto etas = log_grid(plan.n_ode, plan.ode_eta_min, plan.ode_eta_max);
    const auto thetas = lin_grid(plan.n_ode, plan.ode_theta_margin, s.theta_c() - plan.ode_theta_margin);
    const double h2 = p.H * p.H;

    // central difference of ln(value) with a step relative to the distance to the boundary
    auto fd_log = [](const std::function<double(double)>& g, double x, double h) {
        return (std::log(g(x + h)) - std::log(g(x - h))) / (2.0 * h);
    };
    auto mixed = [](double fd, double law) { return std::fabs(fd - law) / std::max(1.0, std::fabs(law)); };

    double worst[4] = {0, 0, 0, 0};
    for (double e : etas) {
        const EtaProfile ep = eta_profile(e, p);
        const double h = 1e-5 * e;
        const double lawV = -std::sinh(e) / (h2 * ep.R1);
        const double lawR = 1.0 / (p.P * std::sinh(e) * ep.R1);
        worst[0] = std::max(worst[0], sane(mixed(fd_log([&](double x) { return s.vcheck(x).value; }, e, h), lawV)));
        worst[1] = std::max(worst[1], sane(mixed(fd_log([&](double x) { return s.rcheck(x).value; }, e, h), lawR)));
    }
    for (double t : thetas) {
        const ThetaProfile tp = theta_profile(t, p);
        const double h = 1e-5 * std::min({1.0, t, s.theta_c() - t});
        const double lawU = std::sin(t) / (p.P * tp.R2);
        const double lawF = p.Chat / (std::sin(t) * tp.R2);
        worst[2] = std::max(worst[2], sane(mixed(fd_log([&](double x) { return s.ucheck(x).value; }, t, h), lawU)));
        worst[3] = std::max(worst[3], sane(mixed(fd_log([&](double x) { return s.fcheck(x).value; }, t, h), lawF)));
    }
    const char* notes[4] = {"d ln V/d eta", "d ln r/d eta", "d ln U/d theta", "d ln f/d theta"};
    for (int k = 0; k < 4; ++k)
        out.push_back(make_record("ODE.5.58." + std::to_string(k + 1), "(5.58)", "ODE", worst[k], 1e-7, plan.n_ode,
                                  std::string(notes[k]) + " by central difference against the law"));
    return out;
}

std::vector<IdentityRecord> verify_skew_lists(const SamplingPlan& plan, const Solution& s) {
    return catalog_records(plan, s, {"S1", "S2", "S3"});
}

std::vector<IdentityRecord> verify_structural_groups(const SamplingPlan& plan, const Solution& s) {
    return catalog_records(plan, s, {"SG1", "SG2", "SG3"});
}

std::vector<IdentityRecord> verify_symmetrizing(const SamplingPlan& plan, const Solution& s) {
    return catalog_records(plan, s, {"SYM"});
}

std::vector<IdentityRecord> verify_separation_lines(const SamplingPlan& plan, const Solution& s) {
    return catalog_records(plan, s, {"SEP"});
}

std::vector<IdentityRecord> verify_tensor_checks(const SamplingPlan& plan, const Frame& frame, const Solution& s) {
    std::vector<IdentityRecord> out;
    const Params& p = s.params();
    const Space space(p, frame, s.perturbation());

    if (plan.n_random > 0) {
        std::vector<double> scales;
        const auto angles = random_angles(plan, s, 0x7465'6e73ULL, &scales);
        std::vector<TensorSample> samples(angles.size());
        std::vector<char> ok(angles.size(), 1);
        parallel_for(angles.size(), [&](std::size_t i) {
            try {
                samples[i] = tensor_sample(tangent_from_angles(angles[i], scales[i], space), space);
            } catch (const Error&) {
                ok[i] = 0;
            }
        });
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (!ok[i]) samples[i] = {kInf, kInf, kInf, kInf, kInf, kInf, kInf, kInf, kInf, kInf, kInf};
        const long n = static_cast<long>(samples.size());
        const std::string where = "random tangent vectors, eta <= " + std::to_string(plan.eta_max_tangent).substr(0, 4);
        out.push_back(make_record("TEN.2.1", "(2.1)", "TEN", max_field(samples, &TensorSample::metric), kAnalyticTol, n, where));
        out.push_back(make_record("TEN.2.1s", "(2.1)", "TEN", max_field(samples, &TensorSample::signature), 0.5, n,
                                  "signature (+,-,-,-): residual counts violations"));
        out.push_back(make_record("TEN.3.8", "(3.8)", "TEN", max_field(samples, &TensorSample::recon_eta), kAnalyticTol, n, where));
        out.push_back(make_record("TEN.3.9", "(3.9)", "TEN", max_field(samples, &TensorSample::recon_theta), kAnalyticTol, n, where));
        out.push_back(make_record("TEN.3.10", "(3.10)", "TEN", max_field(samples, &TensorSample::recon_phi), kAnalyticTol, n, where));
        out.push_back(make_record("TEN.3.11", "(3.11)", "TEN", max_field(samples, &TensorSample::nullify), kAnalyticTol, n, where));
        out.push_back(make_record("TEN.3.12", "(3.12)", "TEN", max_field(samples, &TensorSample::integrability), kOneLayerTol, n,
                                  "skew part of the y-derivative of the rebuilt expansions"));
        out.push_back(make_record("TEN.3.36", "(3.36)", "TEN", max_field(samples, &TensorSample::cartan), kOneLayerTol, n,
                                  "frame expansion against the differenced metric"));
        out.push_back(make_record("TEN.3.36y", "(3.36)", "TEN", max_field(samples, &TensorSample::cartan_y), kOneLayerTol, n,
                                  "C_ijn y^n = 0"));
        out.push_back(make_record("TEN.B.4", "(B.4)", "TEN", max_field(samples, &TensorSample::frame_expansion), kOneLayerTol, n,
                                  "frame-expanded contraction against the direct y-coordinate contraction of the expanded C; "
                                  "the direct side cancels like exp(4 eta)"));
    }

    if (plan.ind_eta * plan.ind_theta * plan.ind_phi > 0) {
        const auto etas = log_grid(plan.ind_eta, plan.eta_min, plan.eta_max_tangent);
        const auto thetas = lin_grid(plan.ind_theta, plan.theta_margin, s.theta_c() - plan.theta_margin);
        SamplingPlan pp = plan;
        pp.n_phi = plan.ind_phi;
        const auto phis = phi_grid(pp, p);
        std::vector<AngleTriple> grid;
        for (double e : etas)
            for (double t : thetas)
                for (double f : phis) grid.push_back({e, t, f});
        std::vector<double> r(grid.size(), kInf);
        const double h2 = p.H * p.H;
        parallel_for(grid.size(), [&](std::size_t i) {
            const AngleTriple& a = grid[i];
            try {
                const Mat3 m = indicatrix_induced_metric(a, space);
                const double sh = std::sinh(a.eta), st = std::sin(a.theta);
                const double want[3] = {1.0 / h2, sh * sh / h2, sh * sh * st * st / h2};
                double w = 0.0;
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) {
                        const double dev = x == y ? std::fabs(m[x][x] - want[x]) / want[x]
                                                  : std::fabs(m[x][y]) / std::sqrt(want[x] * want[y]);
                        w = std::max(w, sane(dev));
                    }
                r[i] = w;
            } catch (const Error&) {
            }
        });
        double worst = 0.0;
        for (double v : r) worst = std::max(worst, v);
        out.push_back(make_record("IND.2.3", "(2.3)", "TEN", worst, kOneLayerTol, static_cast<long>(grid.size()),
                                  "induced metric of the indicatrix, off-diagonals normalized by the diagonal"));
    }
    return out;
}

namespace {

std::vector<IdentityRecord> curvature_tensor_records(const SamplingPlan& plan, const Frame& frame, const Solution& s) {
    std::vector<IdentityRecord> out;
    if (plan.n_random <= 0) return out;
    const Space space(s.params(), frame, s.perturbation());
    std::vector<double> scales;
    const auto angles = random_angles(plan, s, 0x6375'7276ULL, &scales);
    std::vector<double> r(angles.size(), kInf);
    parallel_for(angles.size(), [&](std::size_t i) {
        try {
            const Vec4 y = tangent_from_angles(angles[i], scales[i], space);
            const TensorBundle b = bundle_at(y, space);
            r[i] = sane(rel_tensor4(b.Rhat, constant_curvature_model(b, s.params().Tstar)));
        } catch (const Error&) {
        }
    });
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, v);
    out.push_back(make_record("CURV.3.42", "(3.42)", "CURV", worst, kTwoLayerTol, static_cast<long>(r.size()),
                              "curvature of the differenced Cartan tensor against T* = 1 - H^2"));
    return out;
}

}  // namespace

std::vector<IdentityRecord> verify_curvature_suite(const SamplingPlan& plan, const Frame& frame, const Solution& s) {
    std::vector<IdentityRecord> out = catalog_records(plan, s, {"CURV"});
    for (auto& r : curvature_tensor_records(plan, frame, s)) out.push_back(std::move(r));
    return out;
}

std::vector<IdentityRecord> verify_horizontal(const SamplingPlan& plan, const Solution& s) {
    std::vector<IdentityRecord> out;
    const Params& p = s.params();
    if (plan.n_random > 0) {
        Rng rng(plan.seed ^ 0x686f'727aULL);
        const double half = 0.5 * std::numbers::pi - plan.alpha_margin;
        std::vector<Vec3> vs;
        for (int i = 0; i < plan.n_random; ++i) {
            const double th = rng.uniform(plan.theta_margin, s.theta_c() - plan.theta_margin);
            const double al = rng.uniform(-half, half);
            const double v3 = rng.uniform(0.5, 2.0);
            const double vp = v3 * s.fcheck(th).value / p.C11;
            vs.push_back({vp * std::sin(al), vp * std::cos(al), v3});
        }
        std::vector<HorizontalSample> samples(vs.size());
        parallel_for(vs.size(), [&](std::size_t i) {
            try {
                samples[i] = horizontal_sample(vs[i], s);
            } catch (const Error&) {
                samples[i] = {kInf, kInf, kInf, kInf, kInf, kInf, kInf, kInf};
            }
        });
        const long n = static_cast<long>(samples.size());
        out.push_back(make_record("HOR.5.43", "(5.43)", "HOR", max_field(samples, &HorizontalSample::curvature), kTwoLayerTol, n,
                                  "r^2 R* against (P - 1)(h h - h h)"));
        out.push_back(make_record("HOR.5.44", "(5.44)", "HOR", max_field(samples, &HorizontalSample::angle_form), kOneLayerTol, n));
        out.push_back(make_record("HOR.5.57", "(5.57)", "HOR", max_field(samples, &HorizontalSample::det), kOneLayerTol, n));
        out.push_back(make_record("HOR.5.57p", "(5.57)", "HOR", max_field(samples, &HorizontalSample::pd), 0.5, n,
                                  "R_ab positive definite: residual counts violations"));
        out.push_back(make_record("HOR.5.35", "(5.35)", "HOR", max_field(samples, &HorizontalSample::r_w3), kAnalyticTol, n));
        out.push_back(make_record("HOR.5.37", "(5.37)", "HOR", max_field(samples, &HorizontalSample::r_wperp), kAnalyticTol, n));
        out.push_back(make_record("HOR.5.37e", "(5.37)", "HOR", max_field(samples, &HorizontalSample::euler), kAnalyticTol, n,
                                  "w3 r_w3 + wperp r_wperp = r"));
        out.push_back(make_record("HOR.5.40", "(5.40)", "HOR", max_field(samples, &HorizontalSample::f_second), kAnalyticTol, n));
    }

    if (!plan.lambdas.empty()) {
        // Only lambda * C1 enters the section; the records use C1 scaled by plan.section_scale.
        RawParams raw = p.raw();
        raw.C1 *= plan.section_scale;
        const Params ps = validate_params(raw);
        const Space space(ps, default_frame(), s.perturbation());
        for (double lam : plan.lambdas) {
            char id[48], note[200];
            std::snprintf(id, sizeof id, "HOR.5.56.l%g", lam);
            try {
                const SectionCurvature sc = section_curvature(lam, space);
                std::snprintf(note, sizeof note, "C1 = %g, R = %.6g, curvature = %.9g, P/R^2 = %.9g, max |F - 1| = %.1e",
                              ps.C1, sc.radius.radius, sc.curvature, sc.expected, sc.max_unit_defect);
                out.push_back(make_record(id, "(5.56)", "HOR", sc.max_rel_residual, kTwoLayerTol, sc.points, note));
            } catch (const Error& e) {
                out.push_back(make_record(id, "(5.56)", "HOR", kInf, kTwoLayerTol, 0, e.what()));
            }
        }
    }
    return out;
}

std::vector<IdentityRecord> verify_regularity(const SamplingPlan& plan, const Solution& s) {
    std::vector<IdentityRecord> out;
    if (plan.n_ode <= 0) return out;
    const auto etas = log_grid(plan.n_ode, plan.ode_eta_min, plan.ode_eta_max);
    double worst = 0.0;
    for (double e : etas) {
        const double h = 0.05 * std::min(e, 1.0);
        for (int which = 0; which < 2; ++which) {
            auto g = [&](double x) { return which == 0 ? s.vcheck(x).value : s.rcheck(x).value; };
            const double d4 = (g(e + 2 * h) - 4 * g(e + h) + 6 * g(e) - 4 * g(e - h) + g(e - 2 * h)) / std::pow(h, 4);
            const double scaled = std::pow(std::min(e, 1.0), 4) * std::fabs(d4) / std::fabs(g(e));
            worst = std::max(worst, sane(scaled));
        }
    }
    out.push_back(make_record("REG.5.1", "Definition 5.1", "REG", worst, 100.0, plan.n_ode,
                              "min(eta,1)^4 |4th difference| / |value| of Vcheck and rcheck"));
    return out;
}

Report full_report(const SamplingPlan& plan, const Frame& frame, const Params& p, Perturbation kind) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep{p, plan, kind, {}, "", {}, 0.5, 0.0};
    const Solution s(p, kind);

    auto add = [&](std::vector<IdentityRecord> v) {
        for (auto& r : v) rep.records.push_back(std::move(r));
    };
    add(verify_ode_laws(plan, s));
    add(catalog_records(plan, s, {"S1", "S2", "S3", "SYM", "SG1", "SG2", "SG3", "SEP", "CURV"}));
    add(curvature_tensor_records(plan, frame, s));
    add(verify_tensor_checks(plan, frame, s));
    add(verify_horizontal(plan, s));
    add(verify_regularity(plan, s));

    rep.class_one = probe_class_one(p.H, rep.class_one_P);
    if (rep.records.empty()) {
        rep.overall = "no data";
    } else {
        rep.overall = std::all_of(rep.records.begin(), rep.records.end(), [](const auto& r) { return r.pass; }) ? "pass"
                                                                                                               : "fail";
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string report_to_json(const Report& r, int indent) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["params"] = ordered_json::parse(params_to_json(r.params));
    j["perturbation"] = perturbation_name(r.perturbation);
    const SamplingPlan& pl = r.plan;
    j["plan"] = {{"eta_grid", {{"points", pl.n_eta}, {"min", pl.eta_min}, {"max", pl.eta_max}, {"spacing", "log"}}},
                 {"theta_grid", {{"points", pl.n_theta}}},
                 {"phi_grid", {{"points", pl.n_phi}}},
                 {"eta_max_tangent", pl.eta_max_tangent},
                 {"random", {{"count", pl.n_random}, {"seed", pl.seed}}},
                 {"ode_grid", {{"points", pl.n_ode}, {"eta_min", pl.ode_eta_min}, {"eta_max", pl.ode_eta_max}}},
                 {"indicatrix_grid", {pl.ind_eta, pl.ind_theta, pl.ind_phi}},
                 {"lambdas", pl.lambdas},
                 {"section_C1_scale", pl.section_scale},
                 {"margins",
                  {{"theta", pl.theta_margin}, {"alpha", pl.alpha_margin}, {"ode_theta", pl.ode_theta_margin}}}};
    ordered_json recs = ordered_json::array();
    long passed = 0;
    for (const auto& x : r.records) {
        ordered_json e;
        e["identity_id"] = x.id;
        e["equation_ref"] = x.equation_ref;
        e["group"] = x.group;
        if (std::isfinite(x.max_residual))
            e["max_residual"] = x.max_residual;
        else
            e["max_residual"] = "inf";
        e["tolerance"] = x.tolerance;
        e["points"] = x.points;
        e["status"] = x.pass ? "pass" : "fail";
        if (!x.note.empty()) e["note"] = x.note;
        recs.push_back(e);
        passed += x.pass;
    }
    j["records"] = recs;
    j["summary"] = {{"records", r.records.size()}, {"passed", passed},
                    {"failed", static_cast<long>(r.records.size()) - passed}};
    j["overall"] = r.overall;
    j["diagnostics"] = {{"class_one_probe",
                         {{"P", r.class_one_P},
                          {"H", r.params.H},
                          {"zero_found", r.class_one.zero_found},
                          {"eta0_scan", r.class_one.eta0_scan},
                          {"eta0_closed", r.class_one.eta0_closed},
                          {"radicand_at_scan_start", r.class_one.radicand_at_scan_start}}}};
    return j.dump(indent);
}

namespace {

std::string format_lines(const nlohmann::ordered_json& j) {
    std::ostringstream os;
    char line[512];
    if (j.contains("params")) {
        const auto& p = j.at("params");
        std::snprintf(line, sizeof line, "space: H = %g, T = %g, Chat = %g", p.value("H", 0.0), p.value("T", 0.0),
                      p.value("Chat", 0.0));
        os << line;
        if (j.contains("perturbation") && j.at("perturbation") != "none")
            os << "  (perturbation: " << j.at("perturbation").get<std::string>() << ")";
        os << "\n";
    }
    for (const auto& e : j.at("records")) {
        const auto& mr = e.at("max_residual");
        std::string res = mr.is_number() ? "" : mr.get<std::string>();
        if (mr.is_number()) {
            char b[32];
            std::snprintf(b, sizeof b, "%.2e", mr.get<double>());
            res = b;
        }
        std::snprintf(line, sizeof line, "%-4s %-14s %-16s residual %-9s tol %.0e  points %ld",
                      e.at("status") == "pass" ? "ok" : "FAIL", e.at("identity_id").get<std::string>().c_str(),
                      e.at("equation_ref").get<std::string>().c_str(), res.c_str(), e.at("tolerance").get<double>(),
                      e.at("points").get<long>());
        os << line << "\n";
    }
    os << "overall: " << j.at("overall").get<std::string>() << "\n";
    return os.str();
}

}  // namespace

std::string format_report(const Report& r) {
    std::string out = format_lines(nlohmann::ordered_json::parse(report_to_json(r, -1)));
    char line[64];
    std::snprintf(line, sizeof line, "elapsed: %.2f s\n", r.seconds);
    return out + line;
}

std::string format_report_json(const std::string& json_text) {
    try {
        const auto j = nlohmann::ordered_json::parse(json_text);
        if (!j.is_object() || !j.contains("records") || !j.at("records").is_array() || !j.contains("overall"))
            throw Error("not a verification report");
        return format_lines(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

}  // namespace finsleroid
