#pragma once

#include "finsleroid/deriv.hpp"

namespace finsleroid {

struct BundleOptions {
    bool with_cartan = true;
    double step = 0.0;  // 0: default_fd_step(y)
    int order = 4;      // finite-difference stencil for C
};

struct TensorBundle {
    Vec4 y;
    AngleTriple angles;
    AngleJets jets;
    double F;
    Vec4 l;     // l_i = dF/dy^i
    Mat4 g, ginv, h;
    Vec4 u, m, p;  // covariant unit frame, g-norm -1
    Tensor3<4> C;
    Tensor4<4> Rhat;  // Rhat[j][p][q][n]
};

TensorBundle bundle_at(const Vec4& y, const Space& space, const BundleOptions& opt = {});

// Coefficients of the separated expansions, closed forms at given angles.
struct CoeffSet {
    double u2, u3, u6;
    double z2, z3, z4;
    double r1, r2, r5;
    double L2, L3, L;
    double z2check, z3check, L2check;
};

CoeffSet coefficients_at(const AngleTriple& a, const Params& p);

// All eighteen coefficients of the general expansions of eta_ij, theta_ij, phi_ij,
// read off the exact Hessians by contracting with the raised frame vectors.
// Index k holds u_k, z_k, r_k (index 0 unused).
struct GeneralCoeffs {
    std::array<double, 7> u{}, z{}, r{};
};

GeneralCoeffs extract_coefficients(const TensorBundle& b);

// Extracted coefficients packed like CoeffSet; L2, L3, L come from their definitions.
CoeffSet coeffset_from_general(const GeneralCoeffs& gc, const AngleTriple& a, const Params& p);

// Cartan tensor assembled from the frame and the coefficients.
Tensor3<4> cartan_expansion(const AngleTriple& a, const TensorBundle& b, const CoeffSet& c,
                            const Params& p);

Tensor4<4> curvature_hat(const Tensor3<4>& C, const Mat4& ginv);

// The contraction H^2 F^2 (C^i_pq C_ijn - C^i_pn C_ijq) expanded over the frame,
// divided back by H^2 F^2 (valid when r2 = 0).
Tensor4<4> curvature_frame_expansion(const TensorBundle& b, const CoeffSet& c, const Params& p);

// T (h_pq h_jn - h_pn h_jq) / F^2
Tensor4<4> constant_curvature_model(const TensorBundle& b, double Tstar);

// l l - (eta_i eta_j + sinh^2(theta_i theta_j + sin^2 phi_i phi_j)) F^2 / H^2
Mat4 angle_form_metric(const TensorBundle& b, const Params& p);

// i_ab = -t^i_a t^j_b h_ij with t_a = d l / d(angle a) by central differences.
Mat3 indicatrix_induced_metric(const AngleTriple& a, const Space& space);

}  // namespace finsleroid
