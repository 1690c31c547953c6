#ifndef FINSLEROID_H
#define FINSLEROID_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FSD_API __declspec(dllexport)
#else
#define FSD_API __attribute__((visibility("default")))
#endif

typedef enum fsd_status {
    FSD_OK = 0,
    FSD_DOMAIN_ERROR = 1,        /* parameters or arguments outside their admissible range */
    FSD_OUTSIDE_REGION = 2,      /* tangent vector not in the b-like region */
    FSD_ON_AXIS = 3,             /* w3 <= 0 or wperp = 0 */
    FSD_CONVERGENCE = 4,         /* a root solve did not converge */
    FSD_INVALID_ARGUMENT = 5,    /* null pointer, malformed JSON or grid text */
    FSD_INTERNAL = 6
} fsd_status;

typedef enum fsd_perturbation {
    FSD_PERTURB_NONE = 0,
    FSD_PERTURB_J = 1, /* J times (1 + 0.01 sinh eta) */
    FSD_PERTURB_R = 2, /* rcheck times (1 + 0.01 tanh eta) */
    FSD_PERTURB_U = 3, /* Ucheck times (1 + 0.01 sin theta) */
    FSD_PERTURB_F = 4  /* fcheck times (1 + 0.01 sin theta) */
} fsd_perturbation;

typedef struct fsd_space fsd_space;
typedef struct fsd_report fsd_report;

typedef struct fsd_params {
    double H, T, Chat;
    double C1, C2check, C17, C39, C11, Cstar;
} fsd_params;

typedef struct fsd_eval_result {
    double F;
    double eta, theta, phi;
} fsd_eval_result;

typedef struct fsd_plan {
    int n_eta, n_theta, n_phi;
    int n_random;
    unsigned long long seed;
    int n_ode;
} fsd_plan;

typedef struct fsd_record {
    const char* id;           /* valid while the report lives */
    const char* equation_ref;
    const char* group;
    double max_residual;
    double tolerance;
    long points;
    int pass;
} fsd_record;

/* Message of the last failing call on this thread ("" if none). */
FSD_API const char* fsd_last_error(void);
FSD_API void fsd_string_free(char* s);

FSD_API void fsd_default_params(fsd_params* out);
FSD_API fsd_status fsd_space_create(const fsd_params* params, fsd_space** out);
/* Missing keys take their defaults; unknown keys are rejected. */
FSD_API fsd_status fsd_space_create_json(const char* json, fsd_space** out);
FSD_API void fsd_space_destroy(fsd_space* space);
FSD_API fsd_status fsd_space_params_json(const fsd_space* space, char** out);

FSD_API fsd_status fsd_eval(const fsd_space* space, const double y[4], fsd_eval_result* out);
/* F, angles and the metric tensor as JSON. */
FSD_API fsd_status fsd_eval_json(const fsd_space* space, const double y[4], char** out);
FSD_API fsd_status fsd_metric(const fsd_space* space, const double y[4], double g[16]);
FSD_API fsd_status fsd_tangent_from_angles(const fsd_space* space, double eta, double theta, double phi, double b,
                                           double y[4]);
FSD_API fsd_status fsd_section_radius(const fsd_space* space, double lambda, double* radius);

FSD_API void fsd_default_plan(fsd_plan* out);
FSD_API fsd_status fsd_verify(const fsd_space* space, const fsd_plan* plan, fsd_perturbation kind,
                              fsd_report** out);
FSD_API void fsd_report_destroy(fsd_report* report);
/* 1 pass, 0 fail, -1 no data */
FSD_API int fsd_report_overall(const fsd_report* report);
FSD_API size_t fsd_report_count(const fsd_report* report);
FSD_API fsd_status fsd_report_record(const fsd_report* report, size_t index, fsd_record* out);
FSD_API fsd_status fsd_report_json(const fsd_report* report, char** out);
FSD_API fsd_status fsd_report_text(const fsd_report* report, char** out);
/* Renders a stored JSON report as text. */
FSD_API fsd_status fsd_format_report_json(const char* json, char** out);

/* grid text "AxBxC" */
FSD_API fsd_status fsd_sample_indicatrix_csv(const fsd_space* space, const char* grid, char** out);
FSD_API fsd_status fsd_sample_horizontal_csv(const fsd_space* space, double lambda, const char* grid, char** out);

#ifdef __cplusplus
}
#endif

#endif
