#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <set>

#include "finsleroid/errors.hpp"
#include "finsleroid/sampling.hpp"
#include "finsleroid/tensors.hpp"
#include "finsleroid/verifier.hpp"

using namespace finsleroid;

namespace {

const Params ref = validate_params(RawParams{});

// Runs once; every case below reads the same report.
const Report& default_report() {
    static const Report r = full_report(SamplingPlan{}, default_frame(), ref);
    return r;
}

}  // namespace

TEST_CASE("default space passes every record") {
    const Report& r = default_report();
    CHECK(r.overall == "pass");
    CHECK(r.records.size() >= 30);
    std::set<std::string> ids;
    for (const IdentityRecord& rec : r.records) {
        INFO(rec.id << " residual " << rec.max_residual << " tol " << rec.tolerance);
        CHECK(rec.pass);
        CHECK(rec.pass == (rec.max_residual < rec.tolerance));
        CHECK(rec.points > 0);
        CHECK(ids.insert(rec.id).second);
    }
    for (const char* id : {"S1.3.14", "S2.3.19", "S3.3.21", "SG2.3.29", "SG3.3.32", "SYM.3.33a", "SEP.4.17", "CURV.3.42",
                           "ODE.5.58.1", "ODE.5.58.4", "HOR.5.43", "HOR.5.57", "REG.5.1", "TEN.2.1"})
        CHECK_MESSAGE(r.find(id) != nullptr, id);
}

TEST_CASE("records with structural expectations") {
    const Report& r = default_report();
    // closed-form z2check, z3check carry no eta at all; the record also scans Hessian-extracted values
    for (double theta : {0.3, 1.2, 2.0}) {
        const CoeffSet a = coefficients_at({0.2, theta, 0.0}, ref), b = coefficients_at({4.0, theta, 0.0}, ref);
        CHECK(a.z2check == b.z2check);
        CHECK(a.z3check == b.z3check);
    }
    CHECK(r.find("S2.3.19")->max_residual < 1e-6);
    // the two equations coincide once r5 sin(theta) = z4 and r = z U
    CHECK(r.find("SG3.3.32")->max_residual == doctest::Approx(r.find("SG2.3.29")->max_residual).epsilon(0.1));
    CHECK(r.find("SG3.3.30")->max_residual < 1e-11);
    CHECK(r.find("S1.3.14")->max_residual < 1e-7);
    CHECK(r.find("CURV.3.42")->max_residual < 1e-5);
    CHECK(r.find("SEP.4.9a")->max_residual < 1e-10);
}

TEST_CASE("second parameter set passes") {
    const Report r = full_report(SamplingPlan{}, default_frame(), validate_params(RawParams{1.5, 3.0, 0.2}));
    for (const IdentityRecord& rec : r.records) CHECK_MESSAGE(rec.pass, rec.id << " " << rec.max_residual);
    CHECK(r.passed());
}

TEST_CASE("negative controls fail") {
    const Report j = full_report(SamplingPlan{}, default_frame(), ref, Perturbation::j_factor);
    CHECK(j.overall == "fail");
    CHECK_FALSE(j.find("S1.3.14")->pass);
    CHECK_FALSE(j.find("CURV.3.42")->pass);
    for (Perturbation k : {Perturbation::r_factor, Perturbation::u_factor, Perturbation::f_factor}) {
        const Report r = full_report(SamplingPlan{}, default_frame(), ref, k);
        int failed = 0;
        for (const IdentityRecord& rec : r.records) failed += rec.pass ? 0 : 1;
        CHECK_MESSAGE(failed >= 1, perturbation_name(k));
        CHECK(r.overall == "fail");
    }
}

TEST_CASE("empty plan has no data") {
    const Report r = full_report(empty_plan(), default_frame(), ref);
    CHECK(r.records.empty());
    CHECK(r.overall == "no data");
    CHECK_FALSE(r.passed());
}

TEST_CASE("report is identical across thread counts") {
    SamplingPlan plan;
    plan.n_random = 40;
    ::setenv("FINSLEROID_THREADS", "1", 1);
    const std::string one = report_to_json(full_report(plan, default_frame(), ref));
    ::setenv("FINSLEROID_THREADS", "7", 1);
    const std::string seven = report_to_json(full_report(plan, default_frame(), ref));
    ::unsetenv("FINSLEROID_THREADS");
    CHECK(one == seven);
    plan.seed += 1;
    CHECK(report_to_json(full_report(plan, default_frame(), ref)) != one);
}

TEST_CASE("report JSON schema and text rendering") {
    const nlohmann::json j = nlohmann::json::parse(report_to_json(default_report()));
    CHECK(j.at("overall") == "pass");
    CHECK(j.contains("params"));
    CHECK(j.at("plan").at("margins").contains("theta"));
    for (const auto& rec : j.at("records")) {
        for (const char* key : {"identity_id", "equation_ref", "max_residual", "tolerance", "points", "status"})
            CHECK(rec.contains(key));
    }
    const std::string text = format_report_json(report_to_json(default_report()));
    CHECK(text.find("overall: pass") != std::string::npos);
    CHECK(text.find("CURV.3.42") != std::string::npos);
    CHECK_THROWS_AS(format_report_json("not json"), Error);
    CHECK_THROWS_AS(format_report_json("{\"a\": 1}"), Error);
}

TEST_CASE("grid specifications") {
    const GridSpec g = parse_grid("16x16x8");
    CHECK(g.a == 16);
    CHECK(g.b == 16);
    CHECK(g.c == 8);
    CHECK(parse_grid("4x3").c == 1);
    CHECK_THROWS_AS(parse_grid("16x0x8"), Error);
    CHECK_THROWS_AS(parse_grid("16-16"), Error);
    CHECK_THROWS_AS(parse_grid("99999999999x2"), Error);
}

TEST_CASE("indicatrix samples lie on F = 1") {
    const Space space(ref);
    const auto rows = sample_indicatrix(space, parse_grid("16x16x8"));
    CHECK(rows.size() == 2048);
    for (const IndicatrixRow& row : rows) CHECK(std::fabs(row.F - 1.0) < 1e-10);
    const std::string csv = indicatrix_csv(rows);
    CHECK(csv.rfind("eta,theta,phi,y0,y1,y2,y3,F\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2049);
}

TEST_CASE("horizontal samples are positive definite") {
    const Space space(validate_params(RawParams{2, 2, 0.25, 2.0}));
    const auto rows = sample_horizontal(space, 1.0, parse_grid("6x4x3"));
    CHECK(rows.size() == 72);
    for (const HorizontalRow& row : rows) {
        CHECK(row.min_eig > 0.0);
        CHECK(row.detR > 0.0);
        CHECK(row.curv_residual < 1e-4);
    }
}
