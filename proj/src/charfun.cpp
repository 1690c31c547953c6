#include "finsleroid/charfun.hpp"

#include <cmath>
#include <sstream>

#include "finsleroid/errors.hpp"

namespace finsleroid {

namespace {

void need_positive_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        std::ostringstream msg;
        msg << "eta = " << eta << " outside (0, inf)";
        throw DomainError(msg.str());
    }
}

void need_theta(double theta, double theta_c) {
    if (!(theta > 0.0 && theta < theta_c)) {
        std::ostringstream msg;
        msg << "theta = " << theta << " outside (0, " << theta_c << ")";
        throw DomainError(msg.str());
    }
}

double lhat(double sh, const Params& p) { return p.S1 * p.S1 + p.H1 * p.H1 * sh * sh; }

// ln Y1 with x = cosh eta, written so that x - 1 = 2 sinh^2(eta/2) never cancels.
double log_y1(double eta, double sqrt_lhat, const Params& p) {
    const double a = p.H1 * p.H1;
    const double s1 = p.S1;
    const double sh_half = std::sinh(0.5 * eta);
    const double ch_half = std::cosh(0.5 * eta);
    const double xm1 = 2.0 * sh_half * sh_half;
    const double xp1 = 2.0 * ch_half * ch_half;
    const double first = s1 * s1 + a * xm1 + s1 * sqrt_lhat;
    const double second = s1 * (sqrt_lhat - s1) + a * xp1;
    return 0.5 * s1 * (std::log(first) + std::log(second) - std::log(xm1) - std::log(xp1));
}

// R2 = cos + sqrt(L9), evaluated without cancellation when cos < 0.
double r2_of(double c, double s, double sqrt_l9, const Params& p) {
    if (c >= 0.0) return c + sqrt_l9;
    return p.Chat * (p.T * s * s - 1.0) / (sqrt_l9 - c);
}

}  // namespace

EtaProfile eta_profile(double eta, const Params& p) {
    need_positive_eta(eta);
    EtaProfile e{};
    e.eta = eta;
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    e.Lhat = lhat(sh, p);
    const double sq = std::sqrt(e.Lhat);
    e.R1 = ch + sq;
    e.J = std::pow((p.H1 * ch + sq) / p.S1, p.H1);
    e.Y1 = std::exp(log_y1(eta, sq, p));
    e.Vcheck = p.C1 * e.J / e.R1;
    e.rcheck = p.C2check * sh * e.Y1 / e.R1;
    return e;
}

EtaLimit eta_profile_at_zero(const Params& p) {
    EtaLimit e{};
    e.Lhat = p.S1 * p.S1;
    e.R1 = 1.0 + p.S1;
    e.J = std::pow(1.0 + p.Lhat1, p.H1);
    e.Vcheck = p.C1 * e.J / e.R1;
    return e;
}

EtaLogDerivatives eta_derivatives(double eta, const Params& p) {
    need_positive_eta(eta);
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    const double sq = std::sqrt(lhat(sh, p));
    const double r1 = ch + sq;
    EtaLogDerivatives d{};
    d.dlnV = -sh / (p.H * p.H * r1);
    d.dlnr = 1.0 / (p.P * sh * r1);
    d.dlnJ = p.H1 * p.H1 * sh / sq;
    d.dlnY1 = (1.0 / p.P - 1.0) / (sh * sq);
    return d;
}

double rcheck_limit(const Params& p) {
    return p.C2check * std::pow(p.H1 * (p.H1 + p.S1), p.S1) / (1.0 + p.H1);
}

double theta_critical(const Params& p) { return std::acos(-std::sqrt((p.T - 1.0) / p.T)); }

ThetaProfile theta_profile(double theta, const Params& p) {
    need_theta(theta, theta_critical(p));
    ThetaProfile t{};
    t.theta = theta;
    const double c = std::cos(theta), s = std::sin(theta);
    const double k2 = 1.0 - p.T * p.Chat;
    const double k = std::sqrt(k2);
    t.L9 = p.T * p.Chat - p.Chat + k2 * c * c;
    const double sq = std::sqrt(t.L9);
    t.R2 = r2_of(c, s, sq, p);
    // Smooth form on (0, pi): ((q + sqrt(A) cos)/sin)^{sqrt(1 - Chat)}.
    const double rootA = std::sqrt(p.A);
    const double q = std::sqrt(s * s + p.A * c * c);
    t.Y2 = std::pow((q + rootA * c) / s, std::sqrt(1.0 - p.Chat));
    t.I = std::pow(k * c + sq, k);
    t.Ucheck = p.C39 * t.I / t.R2;
    t.fcheck = p.C17 * s * t.Y2 / t.R2;
    return t;
}

ThetaLogDerivatives theta_derivatives(double theta, const Params& p) {
    need_theta(theta, theta_critical(p));
    const double c = std::cos(theta), s = std::sin(theta);
    const double k2 = 1.0 - p.T * p.Chat;
    const double l9 = p.T * p.Chat - p.Chat + k2 * c * c;
    const double sq = std::sqrt(l9);
    const double r2 = r2_of(c, s, sq, p);
    ThetaLogDerivatives d{};
    d.dlnU = s / (p.P * r2);
    d.dlnf = p.Chat / (s * r2);
    d.dlnI = -k2 * s / sq;
    d.dlnY2 = -(1.0 - p.Chat) / (sq * s);
    return d;
}

PhiProfile phi_and_Z(double t, const Params& p) {
    PhiProfile f{};
    const double rc = std::sqrt(p.Chat);
    const double q = 1.0 + t * t;
    f.t = t;
    f.phi = std::atan(t) / rc + p.Cstar;
    f.Z = p.C11 * std::sqrt(q);
    f.phi_t = 1.0 / (rc * q);
    f.phi_tt = -2.0 * t / (rc * q * q);
    f.Z_t = p.C11 * t / std::sqrt(q);
    f.Z_tt = p.C11 / (q * std::sqrt(q));
    return f;
}

const char* perturbation_name(Perturbation k) {
    switch (k) {
        case Perturbation::none: return "none";
        case Perturbation::j_factor: return "J*(1+eps*sinh(eta))";
        case Perturbation::r_factor: return "rcheck*(1+eps*tanh(eta))";
        case Perturbation::u_factor: return "Ucheck*(1+eps*sin(theta))";
        case Perturbation::f_factor: return "fcheck*(1+eps*sin(theta))";
    }
    return "?";
}

Solution::Solution(const Params& p, Perturbation kind, double eps)
    : p_(p), kind_(kind), eps_(eps), theta_c_(theta_critical(p)) {
    r_limit_ = rcheck_limit(p);
    if (kind == Perturbation::r_factor) r_limit_ *= 1.0 + eps;
    v_zero_ = eta_profile_at_zero(p).Vcheck;
}

namespace {

// y = x * (1 + eps*s): product rule through second order.
Derivs scaled(const Derivs& x, double eps, double s, double s1, double s2) {
    const double m = 1.0 + eps * s;
    return {x.value * m, x.d1 * m + x.value * eps * s1,
            x.d2 * m + 2.0 * x.d1 * eps * s1 + x.value * eps * s2};
}

}  // namespace

Derivs Solution::vcheck(double eta) const {
    const EtaProfile e = eta_profile(eta, p_);
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    const double sq = std::sqrt(e.Lhat);
    const double h2 = p_.H * p_.H;
    const double r1p = sh * (1.0 + p_.H1 * p_.H1 * ch / sq);
    const double g = -sh / (h2 * e.R1);
    const double gp = -(ch * e.R1 - sh * r1p) / (h2 * e.R1 * e.R1);
    Derivs d{e.Vcheck, e.Vcheck * g, e.Vcheck * (g * g + gp)};
    if (kind_ == Perturbation::j_factor) d = scaled(d, eps_, sh, ch, sh);
    return d;
}

Derivs Solution::rcheck(double eta) const {
    const EtaProfile e = eta_profile(eta, p_);
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    const double sq = std::sqrt(e.Lhat);
    const double r1p = sh * (1.0 + p_.H1 * p_.H1 * ch / sq);
    const double k = 1.0 / (p_.P * sh * e.R1);
    const double kp = -(ch * e.R1 + sh * r1p) / (p_.P * sh * sh * e.R1 * e.R1);
    Derivs d{e.rcheck, e.rcheck * k, e.rcheck * (k * k + kp)};
    if (kind_ == Perturbation::r_factor) {
        const double th = std::tanh(eta), sech2 = 1.0 - th * th;
        d = scaled(d, eps_, th, sech2, -2.0 * th * sech2);
    }
    return d;
}

namespace {

// R2 and its theta-derivative.
void r2_pair(double theta, const Params& p, double& r2, double& r2p) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double k2 = 1.0 - p.T * p.Chat;
    const double sq = std::sqrt(p.T * p.Chat - p.Chat + k2 * c * c);
    r2 = r2_of(c, s, sq, p);
    r2p = -s * (sq + k2 * c) / sq;
}

}  // namespace

Derivs Solution::ucheck(double theta) const {
    const ThetaProfile t = theta_profile(theta, p_);
    double r2, r2p;
    r2_pair(theta, p_, r2, r2p);
    const double c = std::cos(theta), s = std::sin(theta);
    const double m = s / (p_.P * r2);
    const double mp = (c * r2 - s * r2p) / (p_.P * r2 * r2);
    Derivs d{t.Ucheck, t.Ucheck * m, t.Ucheck * (m * m + mp)};
    if (kind_ == Perturbation::u_factor) d = scaled(d, eps_, s, c, -s);
    return d;
}

Derivs Solution::fcheck(double theta) const {
    const ThetaProfile t = theta_profile(theta, p_);
    double r2, r2p;
    r2_pair(theta, p_, r2, r2p);
    const double c = std::cos(theta), s = std::sin(theta);
    const double n = p_.Chat / (s * r2);
    const double np = -p_.Chat * (c * r2 + s * r2p) / (s * s * r2 * r2);
    Derivs d{t.fcheck, t.fcheck * n, t.fcheck * (n * n + np)};
    if (kind_ == Perturbation::f_factor) d = scaled(d, eps_, s, c, -s);
    return d;
}

ClassOneProbe probe_class_one(double H, double P) {
    if (!(H > 1.0) || !(P > 0.0 && P < 1.0))
        throw DomainError("Class I probe needs H > 1 and 0 < P < 1");
    auto radicand = [&](double eta) {
        const double sh = std::sinh(eta);
        return 1.0 - 1.0 / P + (1.0 - 1.0 / (H * H)) * sh * sh;
    };
    ClassOneProbe out{};
    out.eta0_closed = std::asinh(std::sqrt((1.0 / P - 1.0) / (1.0 - 1.0 / (H * H))));
    const double lo0 = 1e-3, hi0 = 10.0;
    out.radicand_at_scan_start = radicand(lo0);
    const int n = 400;
    double prev = lo0;
    for (int k = 1; k <= n; ++k) {
        const double cur = lo0 * std::pow(hi0 / lo0, static_cast<double>(k) / n);
        if (radicand(prev) < 0.0 && radicand(cur) >= 0.0) {
            double a = prev, b = cur;
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                const double mid = 0.5 * (a + b);
                (radicand(mid) < 0.0 ? a : b) = mid;
            }
            out.zero_found = true;
            out.eta0_scan = 0.5 * (a + b);
            return out;
        }
        prev = cur;
    }
    return out;
}

}  // namespace finsleroid
