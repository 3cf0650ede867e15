/* C interface to the one-dimensional Coulomb Birman-Schwinger toolkit.
 *
 * All entry points return bsc_status; on BSC_ERR_* the thread-local message
 * from bsc_last_error() describes what went wrong. Handles are opaque and
 * must be released with their _destroy function. The library is deterministic:
 * identical inputs produce identical outputs, bit for bit.
 */
#ifndef BSCOULOMB_H
#define BSCOULOMB_H

#include <stddef.h>

#if defined(_WIN32)
#  define BSC_API __declspec(dllexport)
#else
#  define BSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsc_status {
    BSC_OK = 0,
    BSC_ERR_INVALID_INPUT = 1,
    BSC_ERR_NUMERICAL = 2,
    BSC_ERR_NO_BOUND_STATE = 3
} bsc_status;

typedef enum bsc_domain {
    BSC_DOMAIN_HALFLINE = 0,  /* half-line, f(0)=0 */
    BSC_DOMAIN_LINE = 1,      /* full line, Dirichlet at the origin */
    BSC_DOMAIN_FREE = 2,      /* full line, no boundary condition */
    BSC_DOMAIN_NEUMANN = 3    /* even-parity sector of the free-line problem */
} bsc_domain;

typedef enum bsc_family {
    BSC_FAMILY_EXACT = 0,
    BSC_FAMILY_SOFTCORE = 1,  /* 1/(|x|+eps) */
    BSC_FAMILY_ROUNDED = 2,   /* 1/sqrt(x^2+eps^2) */
    BSC_FAMILY_CUTOFF = 3     /* min(1/|x|, 1/eps) */
} bsc_family;

/* ---- problem handle ---------------------------------------------------- */

typedef struct bsc_problem bsc_problem;

BSC_API bsc_problem* bsc_problem_create(void);
BSC_API void bsc_problem_destroy(bsc_problem* p);

BSC_API bsc_status bsc_problem_set_domain(bsc_problem* p, bsc_domain d);
BSC_API bsc_status bsc_problem_set_family(bsc_problem* p, bsc_family f, double eps);
BSC_API bsc_status bsc_problem_set_coupling(bsc_problem* p, double lambda);
BSC_API bsc_status bsc_problem_set_energy(bsc_problem* p, double abs_e);
BSC_API bsc_status bsc_problem_set_grid(bsc_problem* p, int n_nodes, int panels,
                                        double radius_factor);
/* Jacobi off-diagonal tolerance; non-positive values force a numerical
 * failure, which exercises the error path. */
BSC_API bsc_status bsc_problem_set_eig_tol(bsc_problem* p, double tol);

/* ---- pointwise evaluation ---------------------------------------------- */

BSC_API bsc_status bsc_kernel_eval(const bsc_problem* p, double x, double y, double* out);
BSC_API bsc_status bsc_potential_eval(const bsc_problem* p, double x, double* out);

/* ---- norms, spectra, levels -------------------------------------------- */

typedef struct bsc_hs_norm_result {
    double closed_form;       /* stated value for the domain */
    double closed_form_alt;   /* decoupling-forced value (line domains) */
    double numeric;           /* tail-convergent quadrature */
    double rel_err;           /* |numeric - closest closed form| / closed form */
} bsc_hs_norm_result;

BSC_API bsc_status bsc_hs_norm(const bsc_problem* p, bsc_hs_norm_result* out);

/* Top k eigenvalues (descending) of the discretized operator. */
BSC_API bsc_status bsc_eigenvalues(const bsc_problem* p, int k, double* out);

typedef struct bsc_level_result {
    double energy;
    double mu_at_root;
    double det2_at_root;
    int iterations;
    int multiplicity;
    int parity;               /* 0 unknown, 1 even, 2 odd */
} bsc_level_result;

BSC_API bsc_status bsc_solve_level(const bsc_problem* p, int k, bsc_level_result* out);

typedef struct bsc_count_result {
    int count;
    double bound;             /* decoupling-safe counting bound */
    double bound_stated;      /* stated full-line bound (equal on the half-line) */
} bsc_count_result;

BSC_API bsc_status bsc_count_bound_states(const bsc_problem* p, bsc_count_result* out);

/* ---- sweeps ------------------------------------------------------------- */

typedef struct bsc_sweep_record {
    double eps;
    double hs_distance;
    double hs_norm_sq_smeared;
    double young_bound;
    double level_odd;         /* valid when has_level_odd */
    double level_even;
    int has_level_odd;
    int has_level_even;
} bsc_sweep_record;

/* eps_list must be strictly decreasing; out must hold n records. */
BSC_API bsc_status bsc_sweep(const bsc_problem* p, const double* eps_list, size_t n,
                             bsc_sweep_record* out);
BSC_API bsc_status bsc_klaus(const bsc_problem* p, const double* eps_list, size_t n,
                             bsc_sweep_record* out);

/* Relative residual of the rank-one resolvent-difference identity. */
BSC_API bsc_status bsc_rank_one_check(const bsc_problem* p, double* out);

/* Row-major matrix dump with a "n <nodes> xmax <value>" header line. */
BSC_API bsc_status bsc_dump_matrix(const bsc_problem* p, const char* path);

/* ---- verification report ------------------------------------------------ */

typedef struct bsc_report bsc_report;

BSC_API bsc_status bsc_verify_run(bsc_report** out);
BSC_API void bsc_report_destroy(bsc_report* r);
BSC_API int bsc_report_size(const bsc_report* r);
BSC_API const char* bsc_report_name(const bsc_report* r, int i);
BSC_API const char* bsc_report_detail(const bsc_report* r, int i);
BSC_API double bsc_report_value(const bsc_report* r, int i);
BSC_API double bsc_report_expected(const bsc_report* r, int i);
BSC_API double bsc_report_tolerance(const bsc_report* r, int i);
/* 0 pass, 1 fail, 2 informational note */
BSC_API int bsc_report_status(const bsc_report* r, int i);
BSC_API int bsc_report_all_passed(const bsc_report* r);

/* ---- misc ---------------------------------------------------------------- */

BSC_API const char* bsc_last_error(void);
BSC_API const char* bsc_version(void);

#ifdef __cplusplus
}
#endif

#endif /* BSCOULOMB_H */
