#pragma once

#include <string>

#include "finsleroid/linalg.hpp"

namespace finsleroid {

// Unvalidated user input. Defaults are the reference space H = 2, T = 2, Chat = 1/4.
struct RawParams {
    double H = 2.0;
    double T = 2.0;
    double Chat = 0.25;
    double C1 = 1.0;
    double C2check = 1.0;
    double C17 = 1.0;
    double C39 = 1.0;
    double C11 = 1.0;
    double Cstar = 0.0;
};

// Validated constants of one space plus everything derived from them.
// Construct through validate_params only.
struct Params {
    double H, T, Chat;
    double C1, C2check, C17, C39, C11, Cstar;

    double P;      // 1/(T Chat) > 1
    double C;      // 1/Chat
    double C7;     // 1/P
    double H1;     // sqrt(1 - 1/H^2)
    double S1;     // sqrt(1 - 1/P)
    double Lhat1;  // H1/S1
    double N;      // (1 - 1/H^2)/(1/H^2 - 1/P); any sign, infinite when P = H^2
    double A;      // (1 - Chat)/(Chat T - Chat)
    double Tstar;  // 1 - H^2, the indicatrix curvature constant

    RawParams raw() const;
};

Params validate_params(const RawParams& raw);

RawParams raw_params_from_json(const std::string& text);
std::string params_to_json(const Params& p);

// Orthonormal tetrad of covectors. a_ij = b b - i i - j j - i3 i3 makes any
// linearly independent quadruple orthonormal, so the only check is invertibility.
struct Frame {
    Vec4 b, i, j, i3;
    Mat4 a_lower;
    Mat4 a_upper;
    // Columns are the vectors dual to (b, i, j, i3): b_k E[k][0] = 1, i_k E[k][0] = 0, ...
    Mat4 dual;
};

Frame make_frame(const Vec4& b, const Vec4& i, const Vec4& j, const Vec4& i3);
Frame default_frame();

struct ScalarVars {
    double b, i, j, i3;
    double w1, w2, w3, z;
    double c1, c2, t;  // IEEE inf/nan when z or w2 vanish
    double wperp;
};

ScalarVars decompose(const Vec4& y, const Frame& frame);

}  // namespace finsleroid
