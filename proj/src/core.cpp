#include "finsleroid/core.hpp"

#include <cmath>
#include <sstream>

#include "finsleroid/errors.hpp"

namespace finsleroid {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(what) + " violated");
}

}  // namespace

RawParams Params::raw() const { return {H, T, Chat, C1, C2check, C17, C39, C11, Cstar}; }

Params validate_params(const RawParams& r) {
    for (double v : {r.H, r.T, r.Chat, r.C1, r.C2check, r.C17, r.C39, r.C11, r.Cstar})
        require(std::isfinite(v), "finiteness of all constants");
    require(r.H > 1.0, "H > 1");
    require(r.T > 1.0, "T > 1");
    require(r.Chat > 0.0 && r.Chat < 1.0, "0 < Ĉ < 1");
    require(r.T * r.Chat < 1.0, "TĈ < 1");
    require(r.C1 > 0.0, "C1 > 0");
    require(r.C2check > 0.0, "Č2 > 0");
    require(r.C17 > 0.0, "C17 > 0");
    require(r.C39 > 0.0, "C39 > 0");
    require(r.C11 > 0.0, "C11 > 0");

    Params p{};
    p.H = r.H;
    p.T = r.T;
    p.Chat = r.Chat;
    p.C1 = r.C1;
    p.C2check = r.C2check;
    p.C17 = r.C17;
    p.C39 = r.C39;
    p.C11 = r.C11;
    p.Cstar = r.Cstar;

    p.P = 1.0 / (r.T * r.Chat);
    p.C = 1.0 / r.Chat;
    p.C7 = 1.0 / p.P;
    const double invH2 = 1.0 / (r.H * r.H);
    p.H1 = std::sqrt(1.0 - invH2);
    p.S1 = std::sqrt(1.0 - 1.0 / p.P);
    p.Lhat1 = p.H1 / p.S1;
    p.N = (1.0 - invH2) / (invH2 - 1.0 / p.P);
    p.A = (1.0 - r.Chat) / (r.Chat * r.T - r.Chat);
    p.Tstar = 1.0 - r.H * r.H;
    return p;
}

Frame make_frame(const Vec4& b, const Vec4& i, const Vec4& j, const Vec4& i3) {
    Frame f{b, i, j, i3, {}, {}, {}};
    const Mat4 rows{b, i, j, i3};
    if (std::fabs(determinant<4>(rows)) < 1e-12)
        throw DomainError("frame covectors are linearly dependent");
    const Mat4 inv = inverse<4>(rows);
    f.dual = inv;
    const Mat4 bb = outer<4>(b, b), ii = outer<4>(i, i), jj = outer<4>(j, j), kk = outer<4>(i3, i3);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) f.a_lower[r][c] = bb[r][c] - ii[r][c] - jj[r][c] - kk[r][c];
    // a^ij = E^{-1} diag(1,-1,-1,-1) E^{-T}
    const double sig[4] = {1.0, -1.0, -1.0, -1.0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += inv[r][k] * sig[k] * inv[c][k];
            f.a_upper[r][c] = s;
        }
    return f;
}

Frame default_frame() {
    return make_frame({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1});
}

ScalarVars decompose(const Vec4& y, const Frame& frame) {
    ScalarVars s{};
    s.b = dot<4>(frame.b, y);
    if (!(s.b > 0.0)) {
        std::ostringstream msg;
        msg << "b = " << s.b << " is not positive";
        throw OutsideBLikeRegion(msg.str());
    }
    s.i = dot<4>(frame.i, y);
    s.j = dot<4>(frame.j, y);
    s.i3 = dot<4>(frame.i3, y);
    s.w1 = s.i / s.b;
    s.w2 = s.j / s.b;
    s.w3 = s.i3 / s.b;
    s.z = s.w3;
    s.c1 = s.w1 / s.z;
    s.c2 = s.w2 / s.z;
    s.t = s.w1 / s.w2;
    s.wperp = std::hypot(s.w1, s.w2);
    return s;
}

}  // namespace finsleroid
