#include <doctest.h>

#include <cmath>

#include "finsleroid/core.hpp"
#include "finsleroid/errors.hpp"

using namespace finsleroid;

TEST_CASE("reference space derived constants") {
    const Params p = validate_params(RawParams{});
    CHECK(p.P == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.C7 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.H1 == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(p.S1 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p.C == doctest::Approx(4.0));
    CHECK(p.Tstar == doctest::Approx(-3.0));
    CHECK(p.A == doctest::Approx(3.0));
}

TEST_CASE("second parameter set gives P = 5/3") {
    const Params p = validate_params(RawParams{1.5, 3.0, 0.2});
    CHECK(p.P == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(p.Tstar == doctest::Approx(1.0 - 2.25));
}

TEST_CASE("parameter constraints are enforced with named messages") {
    auto message = [](RawParams r) {
        try {
            validate_params(r);
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({2.0, 0.5, 0.25}).find("T > 1 violated") != std::string::npos);
    CHECK(message({2.0, 3.0, 0.4}).find("TĈ < 1 violated") != std::string::npos);
    CHECK(message({2.0, 2.0, 1.5}).find("0 < Ĉ < 1 violated") != std::string::npos);
    CHECK(message({0.9, 2.0, 0.25}).find("H > 1 violated") != std::string::npos);
    CHECK_FALSE(message({2.0, 2.0, NAN}).empty());
}

TEST_CASE("raw params round-trip through JSON") {
    const RawParams r = raw_params_from_json(R"({"H": 1.5, "T": 3, "Chat": 0.2, "Cstar": 0.1})");
    CHECK(r.H == 1.5);
    CHECK(r.T == 3.0);
    CHECK(r.Cstar == 0.1);
    CHECK(r.C11 == 1.0);
    CHECK_THROWS_AS(raw_params_from_json(R"({"H": 2, "bogus": 1})"), DomainError);
    CHECK_THROWS_AS(raw_params_from_json(R"({"H": "two"})"), DomainError);
    CHECK_THROWS_AS(raw_params_from_json("[1,2]"), DomainError);
    CHECK_THROWS_AS(raw_params_from_json("{"), DomainError);
    const Params p = validate_params(r);
    CHECK(params_to_json(p).find("\"derived\"") != std::string::npos);
}

TEST_CASE("canonical frame is Minkowski") {
    const Frame f = default_frame();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double want = i != j ? 0.0 : (i == 0 ? 1.0 : -1.0);
            CHECK(f.a_lower[i][j] == doctest::Approx(want));
        }
    const Mat4 prod = mat_mul<4>(f.a_upper, f.a_lower);
    CHECK(max_abs_diff<4>(prod, identity<4>()) < 1e-15);
    CHECK(quad<4>(f.a_upper, f.b, f.i) == doctest::Approx(0.0));
}

TEST_CASE("a skewed frame stays orthonormal under its own metric") {
    const Frame f = make_frame({1.2, 0.1, 0.0, 0.3}, {0.2, 1.0, 0.1, 0.0}, {0.0, -0.3, 0.9, 0.1}, {0.1, 0.0, 0.2, 1.1});
    const Mat4 prod = mat_mul<4>(f.a_upper, f.a_lower);
    CHECK(max_abs_diff<4>(prod, identity<4>()) < 1e-13);
    CHECK(quad<4>(f.a_upper, f.b, f.b) == doctest::Approx(1.0));
    CHECK(quad<4>(f.a_upper, f.i3, f.i3) == doctest::Approx(-1.0));
    CHECK(quad<4>(f.a_upper, f.i, f.j) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK_THROWS_AS(make_frame({1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}), DomainError);
}

TEST_CASE("scalar decomposition") {
    const Frame f = default_frame();
    const ScalarVars a = decompose({1, 0, 0, 0}, f);
    CHECK(a.w1 == 0.0);
    CHECK(a.w2 == 0.0);
    CHECK(a.w3 == 0.0);
    CHECK(a.wperp == 0.0);

    const ScalarVars s = decompose({2, 1, 1, 0}, f);
    CHECK(s.b == 2.0);
    CHECK(s.w1 == doctest::Approx(0.5));
    CHECK(s.w2 == doctest::Approx(0.5));
    CHECK(s.w3 == 0.0);
    CHECK(s.t == doctest::Approx(1.0));
    CHECK(s.wperp == doctest::Approx(std::sqrt(0.5)));

    CHECK_THROWS_AS(decompose({-1, 0, 0, 0}, f), OutsideBLikeRegion);
}
