#pragma once

#include "finsleroid/core.hpp"

namespace finsleroid {

// eta-level functions. Y1 and rcheck need eta > 0.
struct EtaProfile {
    double eta;
    double Lhat, R1, J, Y1;
    double Vcheck, rcheck;
};

// Right limits at eta = 0 (rcheck -> 0 there).
struct EtaLimit {
    double Lhat, R1, J, Vcheck;
};

struct EtaLogDerivatives {
    double dlnV, dlnr, dlnJ, dlnY1;
};

EtaProfile eta_profile(double eta, const Params& p);
EtaLimit eta_profile_at_zero(const Params& p);
EtaLogDerivatives eta_derivatives(double eta, const Params& p);

// sup of rcheck over (0, inf); rcheck approaches it as eta -> inf.
double rcheck_limit(const Params& p);

// theta-level functions on (0, theta_c).
struct ThetaProfile {
    double theta;
    double L9, R2, Y2, I;
    double Ucheck, fcheck;
};

struct ThetaLogDerivatives {
    double dlnU, dlnf, dlnI, dlnY2;
};

double theta_critical(const Params& p);
ThetaProfile theta_profile(double theta, const Params& p);
ThetaLogDerivatives theta_derivatives(double theta, const Params& p);

// phi-level functions of t = w1/w2, with derivatives in t.
struct PhiProfile {
    double t, phi, Z;
    double phi_t, phi_tt, Z_t, Z_tt;
};

PhiProfile phi_and_Z(double t, const Params& p);

// value, first and second derivative of a one-variable function
struct Derivs {
    double value, d1, d2;
};

// Which characteristic function (if any) is multiplied by a 1% deformation.
// Used only by the negative controls of the verifier.
enum class Perturbation { none, j_factor, r_factor, u_factor, f_factor };

const char* perturbation_name(Perturbation k);

// The four characteristic functions with exact first and second derivatives.
// The unperturbed derivatives follow from the logarithmic-derivative laws.
class Solution {
public:
    explicit Solution(const Params& p, Perturbation kind = Perturbation::none, double eps = 0.01);

    const Params& params() const { return p_; }
    Perturbation perturbation() const { return kind_; }

    Derivs vcheck(double eta) const;
    Derivs rcheck(double eta) const;
    Derivs ucheck(double theta) const;
    Derivs fcheck(double theta) const;

    double theta_c() const { return theta_c_; }
    double r_limit() const { return r_limit_; }
    double v_at_zero() const { return v_zero_; }

private:
    Params p_;
    Perturbation kind_;
    double eps_;
    double theta_c_;
    double r_limit_;
    double v_zero_;
};

// Class I comparison: with P < 1 the eta-level radicand
// 1 - 1/P + (1 - 1/H^2) sinh^2 eta is negative below a real zero eta0.
struct ClassOneProbe {
    bool zero_found;
    double eta0_scan;    // located by sign-change scan + bisection
    double eta0_closed;  // asinh(sqrt((1/P - 1)/(1 - 1/H^2)))
    double radicand_at_scan_start;
};

ClassOneProbe probe_class_one(double H, double P);

}  // namespace finsleroid
