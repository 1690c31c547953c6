#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsleroid/core.hpp"
#include "finsleroid/charfun.hpp"

namespace finsleroid {

struct SamplingPlan {
    // angle grid of the coefficient identities
    int n_eta = 24;
    double eta_min = 1e-2, eta_max = 6.0;
    int n_theta = 16;
    double theta_margin = 0.05;  // keeps theta in [margin, theta_c - margin]
    int n_phi = 8;
    double alpha_margin = 0.05;  // keeps sqrt(Chat)(phi - C*) inside (-pi/2, pi/2) by this much
    // extracted coefficients and tensor checks in y-space stay below this eta
    double eta_max_tangent = 3.0;
    // random tangent vectors and random horizontal vectors
    int n_random = 200;
    std::uint64_t seed = 20240601;
    // one-dimensional law checks and the regularity probe
    int n_ode = 128;
    double ode_eta_min = 1e-3, ode_eta_max = 10.0;
    double ode_theta_margin = 1e-3;
    // indicatrix induced-metric grid
    int ind_eta = 16, ind_theta = 12, ind_phi = 8;
    // section curvature heights; lambda * C1 is what enters, see section_scale
    std::vector<double> lambdas{0.5, 1.0, 2.0};
    double section_scale = 2.0;  // C1 used for the section records

    bool empty() const;
};

// The plan with every count set to zero.
SamplingPlan empty_plan();

struct IdentityRecord {
    std::string id;
    std::string equation_ref;
    std::string group;
    double max_residual = 0.0;
    double tolerance = 0.0;
    long points = 0;
    bool pass = false;
    std::string note;
};

struct Report {
    Params params;
    SamplingPlan plan;
    Perturbation perturbation = Perturbation::none;
    std::vector<IdentityRecord> records;
    std::string overall;  // "pass", "fail" or "no data"
    // Class I comparison (reported, not verified)
    ClassOneProbe class_one{};
    double class_one_P = 0.5;
    double seconds = 0.0;

    bool passed() const { return overall == "pass"; }
    const IdentityRecord* find(const std::string& id) const;
};

std::vector<IdentityRecord> verify_ode_laws(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_skew_lists(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_structural_groups(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_symmetrizing(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_separation_lines(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_curvature_suite(const SamplingPlan& plan, const Frame& frame,
                                                   const Solution& s);
std::vector<IdentityRecord> verify_tensor_checks(const SamplingPlan& plan, const Frame& frame,
                                                 const Solution& s);
std::vector<IdentityRecord> verify_horizontal(const SamplingPlan& plan, const Solution& s);
std::vector<IdentityRecord> verify_regularity(const SamplingPlan& plan, const Solution& s);

Report full_report(const SamplingPlan& plan, const Frame& frame, const Params& p,
                   Perturbation kind = Perturbation::none);

std::string report_to_json(const Report& r, int indent = 2);
// Plain-text table with one line per record.
std::string format_report(const Report& r);
// Re-renders a stored JSON report as text; throws Error on malformed input.
std::string format_report_json(const std::string& json_text);

}  // namespace finsleroid
