#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "finsleroid/finsleroid.h"

namespace {

struct SpaceGuard {
    fsd_space* s = nullptr;
    ~SpaceGuard() { fsd_space_destroy(s); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    fsd_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("spaces are created from structs and JSON") {
    fsd_params p;
    fsd_default_params(&p);
    CHECK(p.H == 2.0);
    CHECK(p.Chat == 0.25);
    SpaceGuard g;
    REQUIRE(fsd_space_create(&p, &g.s) == FSD_OK);
    char* json = nullptr;
    REQUIRE(fsd_space_params_json(g.s, &json) == FSD_OK);
    CHECK(take(json).find("\"P\": 2.0") != std::string::npos);

    p.T = 0.5;
    fsd_space* bad = nullptr;
    CHECK(fsd_space_create(&p, &bad) == FSD_DOMAIN_ERROR);
    CHECK(bad == nullptr);
    CHECK(std::string(fsd_last_error()).find("T > 1 violated") != std::string::npos);

    SpaceGuard j;
    CHECK(fsd_space_create_json("{\"H\": 1.5, \"T\": 3, \"Chat\": 0.2}", &j.s) == FSD_OK);
    fsd_space* junk = nullptr;
    CHECK(fsd_space_create_json("{\"H\": ", &junk) == FSD_DOMAIN_ERROR);
    CHECK(fsd_space_create_json(nullptr, &junk) == FSD_INVALID_ARGUMENT);
    CHECK(fsd_space_create(nullptr, &junk) == FSD_INVALID_ARGUMENT);
}

TEST_CASE("evaluation through the C interface") {
    SpaceGuard g;
    REQUIRE(fsd_space_create_json("{}", &g.s) == FSD_OK);
    const double y[4] = {2.0, 0.3, 0.2, 0.5};
    fsd_eval_result r{};
    REQUIRE(fsd_eval(g.s, y, &r) == FSD_OK);
    CHECK(r.F > 0.0);

    const double y2[4] = {4.0, 0.6, 0.4, 1.0};
    fsd_eval_result r2{};
    REQUIRE(fsd_eval(g.s, y2, &r2) == FSD_OK);
    CHECK(r2.F == doctest::Approx(2.0 * r.F).epsilon(1e-13));
    CHECK(r2.eta == doctest::Approx(r.eta).epsilon(1e-12));

    double g4[16];
    REQUIRE(fsd_metric(g.s, y, g4) == FSD_OK);
    double gyy = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gyy += g4[4 * i + j] * y[i] * y[j];
    CHECK(gyy == doctest::Approx(r.F * r.F).epsilon(1e-12));

    double t[4];
    REQUIRE(fsd_tangent_from_angles(g.s, r.eta, r.theta, r.phi, 2.0, t) == FSD_OK);
    for (int i = 0; i < 4; ++i) CHECK(t[i] == doctest::Approx(y[i]).epsilon(1e-9));

    char* js = nullptr;
    REQUIRE(fsd_eval_json(g.s, y, &js) == FSD_OK);
    const std::string text = take(js);
    CHECK(text.find("\"metric_eigenvalues\"") != std::string::npos);

    const double out[4] = {-1.0, 0.1, 0.1, 0.1};
    CHECK(fsd_eval(g.s, out, &r) == FSD_OUTSIDE_REGION);
    const double axis[4] = {1.0, 0.0, 0.0, 0.3};
    CHECK(fsd_eval(g.s, axis, &r) == FSD_ON_AXIS);
    CHECK(fsd_eval(g.s, nullptr, &r) == FSD_INVALID_ARGUMENT);
    CHECK(std::strlen(fsd_last_error()) > 0);

    double radius = 0.0;
    CHECK(fsd_section_radius(g.s, 1.0, &radius) == FSD_OK);
    CHECK(radius > 0.0);
    CHECK(fsd_section_radius(g.s, 0.5, &radius) == FSD_DOMAIN_ERROR);
}

TEST_CASE("verification reports through the C interface") {
    SpaceGuard g;
    REQUIRE(fsd_space_create_json("{}", &g.s) == FSD_OK);
    fsd_plan plan;
    fsd_default_plan(&plan);
    CHECK(plan.n_eta == 24);
    fsd_report* rep = nullptr;
    REQUIRE(fsd_verify(g.s, &plan, FSD_PERTURB_NONE, &rep) == FSD_OK);
    CHECK(fsd_report_overall(rep) == 1);
    const size_t n = fsd_report_count(rep);
    CHECK(n >= 30);
    fsd_record rec{};
    REQUIRE(fsd_report_record(rep, 0, &rec) == FSD_OK);
    CHECK(std::strlen(rec.id) > 0);
    CHECK(rec.pass == 1);
    CHECK(fsd_report_record(rep, n, &rec) == FSD_INVALID_ARGUMENT);
    char* json = nullptr;
    REQUIRE(fsd_report_json(rep, &json) == FSD_OK);
    char* text = nullptr;
    REQUIRE(fsd_format_report_json(json, &text) == FSD_OK);
    CHECK(take(text).find("overall: pass") != std::string::npos);
    fsd_string_free(json);
    fsd_report_destroy(rep);

    REQUIRE(fsd_verify(g.s, &plan, FSD_PERTURB_J, &rep) == FSD_OK);
    CHECK(fsd_report_overall(rep) == 0);
    fsd_report_destroy(rep);

    const fsd_plan none{};
    REQUIRE(fsd_verify(g.s, &none, FSD_PERTURB_NONE, &rep) == FSD_OK);
    CHECK(fsd_report_overall(rep) == -1);
    CHECK(fsd_report_count(rep) == 0);
    fsd_report_destroy(rep);
}

TEST_CASE("sampling through the C interface") {
    SpaceGuard g;
    REQUIRE(fsd_space_create_json("{}", &g.s) == FSD_OK);
    char* csv = nullptr;
    REQUIRE(fsd_sample_indicatrix_csv(g.s, "4x3x2", &csv) == FSD_OK);
    const std::string text = take(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 25);
    CHECK(fsd_sample_indicatrix_csv(g.s, "4by3", &csv) == FSD_INVALID_ARGUMENT);
    SpaceGuard h;
    REQUIRE(fsd_space_create_json("{\"C1\": 2}", &h.s) == FSD_OK);
    REQUIRE(fsd_sample_horizontal_csv(h.s, 1.0, "4x2x1", &csv) == FSD_OK);
    CHECK(take(csv).rfind("theta,phi,scale,v1,v2,v3,r,detR,min_eig,curv_residual\n", 0) == 0);
}
