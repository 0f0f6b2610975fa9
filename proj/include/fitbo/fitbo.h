/* C interface to the FITBO Bayesian optimisation library.
 *
 * All functions return a fitbo_status code unless documented otherwise.
 * On failure, fitbo_last_error() describes the problem for the calling
 * thread. Handles are opaque and must be released with the matching
 * *_destroy function. Points and point batches are row-major doubles.
 */
#ifndef FITBO_FITBO_H
#define FITBO_FITBO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fitbo_status {
    FITBO_OK = 0,
    FITBO_ERR_ARGUMENT = 1,      /* bad input from the caller */
    FITBO_ERR_DOMAIN = 2,        /* mathematical domain violation */
    FITBO_ERR_CONDITIONING = 3,  /* factorisation failed at max jitter */
    FITBO_ERR_RUNTIME = 4        /* everything else */
} fitbo_status;

typedef enum fitbo_acq_kind {
    FITBO_ACQ_FITBO = 0,
    FITBO_ACQ_FITBO_MM = 1,
    FITBO_ACQ_EI = 2,
    FITBO_ACQ_PI = 3,
    FITBO_ACQ_UCB = 4
} fitbo_acq_kind;

typedef struct fitbo_problem fitbo_problem;
typedef struct fitbo_model fitbo_model;
typedef struct fitbo_trace fitbo_trace;

const char* fitbo_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* fitbo_last_error(void);

/* Parses "FITBO", "FITBO_MM"/"FITBO-MM", "EI", "PI", "UCB"/"GP-UCB". */
int fitbo_acq_kind_parse(const char* name, fitbo_acq_kind* out_kind);

/* ---- benchmark problems ------------------------------------------------ */

/* name: "branin" | "eggholder" | "hartmann6". noise_std >= 0. */
int fitbo_problem_create_benchmark(const char* name, double noise_std,
                                   fitbo_problem** out_problem);
void fitbo_problem_destroy(fitbo_problem* problem);
int fitbo_problem_dim(const fitbo_problem* problem, int* out_dim);
/* Noise-free objective at a unit-cube point x (length dim). */
int fitbo_problem_eval(const fitbo_problem* problem, const double* x, double* out_value);

/* ---- model fitting and acquisition ------------------------------------- */

/* Fits the joint hyperparameter/minimum posterior on observations
 * (X: n x d row-major in the unit cube, y: length n) and draws m samples.
 * fixed_noise_std > 0 pins the observation noise; pass 0 to sample it. */
int fitbo_model_fit(const double* X, const double* y, int n, int d, int m_samples,
                    int burn_in, int thin, uint64_t seed, double fixed_noise_std,
                    fitbo_model** out_model);
void fitbo_model_destroy(fitbo_model* model);
int fitbo_model_sample_count(const fitbo_model* model, int* out_count);

/* Acquisition values at n_points unit-cube points (row-major n_points x d).
 * out_values must hold n_points doubles. */
int fitbo_acq_eval_batch(const fitbo_model* model, fitbo_acq_kind kind,
                         const double* points, int n_points, double* out_values);

/* ---- the optimisation loop --------------------------------------------- */

/* Runs iters Bayesian-optimisation iterations from init_count random initial
 * observations. pin_noise != 0 pins sigma_n to the problem's noise_std.
 * Always yields a trace on FITBO_OK; inspect fitbo_trace_aborted for
 * mid-run objective failures (the trace then holds completed iterations). */
int fitbo_run_bo(const fitbo_problem* problem, fitbo_acq_kind kind, int iters,
                 int init_count, int m_samples, int burn_in, int thin, int acq_budget,
                 uint64_t seed, int pin_noise, fitbo_trace** out_trace);

void fitbo_trace_destroy(fitbo_trace* trace);
int fitbo_trace_length(const fitbo_trace* trace, int* out_length);
int fitbo_trace_dim(const fitbo_trace* trace, int* out_dim);
int fitbo_trace_aborted(const fitbo_trace* trace, int* out_aborted);

/* Copies one iteration record (0-based). x and xhat need dim doubles each;
 * any output pointer may be NULL to skip that field. ir/l2 are NaN when the
 * problem carries no ground truth. */
int fitbo_trace_record(const fitbo_trace* trace, int index, double* x, double* y,
                       double* xhat, double* ir, double* l2, double* t_sampling,
                       double* t_acq_opt);

/* Line-delimited JSON with a schema-versioned header. The returned string is
 * owned by the caller; release it with fitbo_string_free. */
int fitbo_trace_to_jsonl(const fitbo_trace* trace, char** out_text);
int fitbo_trace_parse_jsonl(const char* text, fitbo_trace** out_trace);
void fitbo_string_free(char* text);

/* ---- entropy estimators ------------------------------------------------- */

int fitbo_gaussian_entropy(double variance, double* out_entropy);
int fitbo_gmm_moments(const double* means, const double* variances, int m,
                      double* out_mean, double* out_variance);
int fitbo_gmm_entropy_mm(const double* means, const double* variances, int m,
                         double* out_entropy);
int fitbo_gmm_entropy_quadrature(const double* means, const double* variances, int m,
                                 double rel_tol, double* out_entropy);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FITBO_FITBO_H */
