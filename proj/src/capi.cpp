#include "finsleroid/finsleroid.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "finsleroid/deriv.hpp"
#include "finsleroid/errors.hpp"
#include "finsleroid/horizontal.hpp"
#include "finsleroid/sampling.hpp"
#include "finsleroid/verifier.hpp"

using namespace finsleroid;

struct fsd_space {
    Space space;
};

struct fsd_report {
    Report report;
};

namespace {

thread_local std::string last_error;

fsd_status fail(fsd_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

// Runs fn and maps exceptions to status codes; the order matters (subclasses first).
template <class Fn>
fsd_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return FSD_OK;
    } catch (const OutsideBLikeRegion& e) {
        return fail(FSD_OUTSIDE_REGION, e.what());
    } catch (const OnAxisSection& e) {
        return fail(FSD_ON_AXIS, e.what());
    } catch (const ConvergenceError& e) {
        return fail(FSD_CONVERGENCE, e.what());
    } catch (const DomainError& e) {
        return fail(FSD_DOMAIN_ERROR, e.what());
    } catch (const Error& e) {
        return fail(FSD_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FSD_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FSD_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(const void* p, const char* what) {
    if (!p) throw Error(std::string(what) + " must not be null");
}

Vec4 to_vec(const double y[4]) { return {y[0], y[1], y[2], y[3]}; }

}  // namespace

extern "C" {

const char* fsd_last_error(void) { return last_error.c_str(); }

void fsd_string_free(char* s) { std::free(s); }

void fsd_default_params(fsd_params* out) {
    if (!out) return;
    const RawParams r;
    *out = {r.H, r.T, r.Chat, r.C1, r.C2check, r.C17, r.C39, r.C11, r.Cstar};
}

fsd_status fsd_space_create(const fsd_params* params, fsd_space** out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        *out = nullptr;
        const RawParams r{params->H,   params->T,   params->Chat, params->C1,   params->C2check,
                          params->C17, params->C39, params->C11,  params->Cstar};
        *out = new fsd_space{Space(validate_params(r))};
    });
}

fsd_status fsd_space_create_json(const char* json, fsd_space** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = nullptr;
        *out = new fsd_space{Space(validate_params(raw_params_from_json(json)))};
    });
}

void fsd_space_destroy(fsd_space* space) { delete space; }

fsd_status fsd_space_params_json(const fsd_space* space, char** out) {
    return guarded([&] {
        require(space, "space");
        require(out, "out");
        *out = dup_string(params_to_json(space->space.params()));
    });
}

fsd_status fsd_eval(const fsd_space* space, const double y[4], fsd_eval_result* out) {
    return guarded([&] {
        require(space, "space");
        require(y, "y");
        require(out, "out");
        const TangentAngles t = angles_from_tangent(to_vec(y), space->space);
        *out = {t.F, t.angles.eta, t.angles.theta, t.angles.phi};
    });
}

fsd_status fsd_eval_json(const fsd_space* space, const double y[4], char** out) {
    return guarded([&] {
        require(space, "space");
        require(y, "y");
        require(out, "out");
        const Vec4 v = to_vec(y);
        const TangentAngles t = angles_from_tangent(v, space->space);
        const Mat4 g = metric_tensor(v, space->space);
        nlohmann::ordered_json j;
        j["y"] = {v[0], v[1], v[2], v[3]};
        j["F"] = t.F;
        j["angles"] = {{"eta", t.angles.eta}, {"theta", t.angles.theta}, {"phi", t.angles.phi}};
        j["metric"] = nlohmann::ordered_json::array();
        for (const auto& row : g) j["metric"].push_back({row[0], row[1], row[2], row[3]});
        const Vec4 ev = symmetric_eigenvalues<4>(g);
        j["metric_eigenvalues"] = {ev[0], ev[1], ev[2], ev[3]};
        *out = dup_string(j.dump(2));
    });
}

fsd_status fsd_metric(const fsd_space* space, const double y[4], double g[16]) {
    return guarded([&] {
        require(space, "space");
        require(y, "y");
        require(g, "g");
        const Mat4 m = metric_tensor(to_vec(y), space->space);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g[4 * i + j] = m[i][j];
    });
}

fsd_status fsd_tangent_from_angles(const fsd_space* space, double eta, double theta, double phi, double b,
                                   double y[4]) {
    return guarded([&] {
        require(space, "space");
        require(y, "y");
        const Vec4 v = tangent_from_angles({eta, theta, phi}, b, space->space);
        for (int i = 0; i < 4; ++i) y[i] = v[i];
    });
}

fsd_status fsd_section_radius(const fsd_space* space, double lambda, double* radius) {
    return guarded([&] {
        require(space, "space");
        require(radius, "radius");
        *radius = section_radius(lambda, space->space.solution).radius;
    });
}

void fsd_default_plan(fsd_plan* out) {
    if (!out) return;
    const SamplingPlan p;
    *out = {p.n_eta, p.n_theta, p.n_phi, p.n_random, p.seed, p.n_ode};
}

fsd_status fsd_verify(const fsd_space* space, const fsd_plan* plan, fsd_perturbation kind, fsd_report** out) {
    return guarded([&] {
        require(space, "space");
        require(out, "out");
        *out = nullptr;
        if (kind < FSD_PERTURB_NONE || kind > FSD_PERTURB_F) throw Error("unknown perturbation");
        SamplingPlan p;
        if (plan) {
            if (plan->n_eta < 0 || plan->n_theta < 0 || plan->n_phi < 0 || plan->n_random < 0 || plan->n_ode < 0)
                throw Error("plan counts must be non-negative");
            p.n_eta = plan->n_eta;
            p.n_theta = plan->n_theta;
            p.n_phi = plan->n_phi;
            p.n_random = plan->n_random;
            p.seed = plan->seed;
            p.n_ode = plan->n_ode;
            // an all-zero plan is the empty plan
            if (p.n_eta * p.n_theta * p.n_phi == 0 && p.n_random == 0 && p.n_ode == 0) p = empty_plan();
        }
        auto rep = std::make_unique<fsd_report>();
        rep->report = full_report(p, space->space.frame, space->space.params(), static_cast<Perturbation>(kind));
        *out = rep.release();
    });
}

void fsd_report_destroy(fsd_report* report) { delete report; }

int fsd_report_overall(const fsd_report* report) {
    if (!report) return 0;
    if (report->report.overall == "no data") return -1;
    return report->report.passed() ? 1 : 0;
}

size_t fsd_report_count(const fsd_report* report) { return report ? report->report.records.size() : 0; }

fsd_status fsd_report_record(const fsd_report* report, size_t index, fsd_record* out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        if (index >= report->report.records.size()) throw Error("record index out of range");
        const IdentityRecord& r = report->report.records[index];
        *out = {r.id.c_str(), r.equation_ref.c_str(), r.group.c_str(), r.max_residual, r.tolerance, r.points,
                r.pass ? 1 : 0};
    });
}

fsd_status fsd_report_json(const fsd_report* report, char** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        *out = dup_string(report_to_json(report->report));
    });
}

fsd_status fsd_report_text(const fsd_report* report, char** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        *out = dup_string(format_report(report->report));
    });
}

fsd_status fsd_format_report_json(const char* json, char** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = dup_string(format_report_json(json));
    });
}

fsd_status fsd_sample_indicatrix_csv(const fsd_space* space, const char* grid, char** out) {
    return guarded([&] {
        require(space, "space");
        require(grid, "grid");
        require(out, "out");
        *out = dup_string(indicatrix_csv(sample_indicatrix(space->space, parse_grid(grid))));
    });
}

fsd_status fsd_sample_horizontal_csv(const fsd_space* space, double lambda, const char* grid, char** out) {
    return guarded([&] {
        require(space, "space");
        require(grid, "grid");
        require(out, "out");
        *out = dup_string(horizontal_csv(sample_horizontal(space->space, lambda, parse_grid(grid))));
    });
}

}  // extern "C"
