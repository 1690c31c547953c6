#pragma once

#include "finsleroid/inversion.hpp"
#include "finsleroid/jet.hpp"

namespace finsleroid {

using Jet3 = Jet<3>;

// r(v) = v3 U(theta(f)), f = C11 vperp / v3, on v3 > 0, vperp > 0.
double r_hat(const Vec3& v, const Solution& s);

struct HorizontalJets {
    Jet3 f, theta, phi, r;
};

HorizontalJets horizontal_jets(const Vec3& v, const Solution& s);

// R_ab = (1/2) d^2 r^2 / dv^a dv^b
Mat3 horizontal_metric(const Vec3& v, const Solution& s);

struct HorizontalBundle {
    Vec3 v;
    HorizontalJets jets;
    double r;
    Vec3 r_a;
    Mat3 R, Rinv, h;
    Tensor3<3> C;
    Tensor4<3> Rstar;  // Rstar[b][a][c][e] = C_afc C^f_be - C_afe C^f_bc
};

HorizontalBundle horizontal_bundle(const Vec3& v, const Solution& s, int order = 4);

// (P - 1)(h_bc h_ae - h_be h_ac) / r^2
Tensor4<3> horizontal_curvature_model(const HorizontalBundle& b, double P);

// max |r^2 R* - (P-1)(h h - h h)| / max |(P-1)(h h - h h)|
double horizontal_curvature_check(const HorizontalBundle& b, const Params& p);

// Least-squares k with r^2 R* = k (h_bc h_ae - h_be h_ac).
double horizontal_curvature_factor(const HorizontalBundle& b);

// h_ab against (1/P)(theta_a theta_b + sin^2 theta phi_a phi_b) r^2, relative.
double horizontal_angle_form_check(const HorizontalBundle& b, const Params& p);

// I^6 C39^6 (C11/C17)^4 / (P^2 Chat^3 Y2^4)
double determinant_closed_form(double theta, const Params& p);
double determinant_check(const HorizontalBundle& b, const Params& p);

// Closed forms of dr/dw3 (fixed wperp) and dr/dwperp (fixed w3).
double r_w3_closed_form(const Vec3& v, const Params& p);
double r_wperp_closed_form(const Vec3& v, const Params& p);

struct SectionRadius {
    double eta_star;  // Vcheck(eta_star) = 1/lambda
    double r_max;     // rcheck(eta_star)
    double radius;    // lambda * r_max
};

SectionRadius section_radius(double lambda, const Solution& s);

// Gaussian curvature of the section indicatrix measured through the tensor
// identity at points (theta_k, phi_k) of the lambda-section, and the check F = 1
// on those points.
struct SectionCurvature {
    SectionRadius radius;
    double curvature;         // (1 + k)/R^2, k fitted at the points
    double expected;          // P/R^2
    double max_rel_residual;  // over points: |(1 + k_pt) - P| / P
    double max_unit_defect;   // over points: |F(lambda, u) - 1|
    int points;
};

SectionCurvature section_curvature(double lambda, const Space& space, int n_theta = 4, int n_phi = 3);

}  // namespace finsleroid
