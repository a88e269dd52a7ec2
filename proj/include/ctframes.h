/* ctframes — continuous frames over atomic measure spaces, tensor products,
 * frame multipliers, localization operators and bipartite density operators.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns a ctf_status
 * and leaves a diagnostic in ctf_last_error() (thread-local) on failure.
 *
 * Complex data crosses the boundary as interleaved doubles re0, im0, re1,
 * im1, ... Matrices are column-major. All returned strings are owned by the
 * caller and released with ctf_string_free().
 */
#ifndef CTFRAMES_H
#define CTFRAMES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctf_status {
  CTF_OK = 0,
  CTF_ERR_INVALID_ARGUMENT = 1, /* precondition violated */
  CTF_ERR_DIMENSION_MISMATCH = 2,
  CTF_ERR_NOT_A_FRAME = 3,      /* singular frame operator */
  CTF_ERR_PARSE = 4,            /* malformed config or JSON input */
  CTF_ERR_IO = 5,               /* output could not be written */
  CTF_ERR_CHECK_FAILED = 6,     /* experiment ran, some check failed */
  CTF_ERR_INTERNAL = 7
} ctf_status;

typedef struct ctf_space ctf_space;   /* finite atomic measure space */
typedef struct ctf_frame ctf_frame;   /* vector family over a space */
typedef struct ctf_operator ctf_operator; /* dense complex matrix */
typedef struct ctf_symbol ctf_symbol; /* complex function on atoms */

const char* ctf_version(void);
/* Message of the last failing call on this thread; empty when none. */
const char* ctf_last_error(void);
void ctf_string_free(char* s);

/* ---- measure spaces ---------------------------------------------------- */

/* coords: coord_dim * count doubles, atom k at coords + k*coord_dim. */
ctf_status ctf_space_create(const double* coords, size_t coord_dim, const double* weights,
                            size_t count, ctf_space** out);
ctf_status ctf_space_product(const ctf_space* a, const ctf_space* b, ctf_space** out);
ctf_status ctf_space_atom_count(const ctf_space* s, size_t* out);
ctf_status ctf_space_total_mass(const ctf_space* s, double* out);
/* values: 2*count interleaved; result written to out[0], out[1]. */
ctf_status ctf_space_integrate(const ctf_space* s, const double* values, double out[2]);
ctf_status ctf_space_to_json(const ctf_space* s, char** out);
void ctf_space_destroy(ctf_space* s);

/* ---- frames ------------------------------------------------------------ */

/* columns: 2 * dim * atom_count interleaved doubles, column-major. */
ctf_status ctf_frame_create(const ctf_space* space, size_t dim, const double* columns,
                            ctf_frame** out);
/* Finite Gabor system of all n^2 time-frequency shifts of the window
 * (2n interleaved doubles); exactly tight with bound n ||g||^2. */
ctf_status ctf_frame_gabor(const double* window, size_t n, ctf_frame** out);
/* Discretized wavelet system with Haar-measure weights; diagnostics receives
 * {empirical tight constant, max deviation of S/c from I} when non-NULL. */
ctf_status ctf_frame_wavelet(size_t samples, double dt, double sigma, double scale_min,
                             double scale_max, size_t scales, size_t translations,
                             ctf_frame** out, double diagnostics[2]);
ctf_status ctf_frame_dim(const ctf_frame* f, size_t* out);
ctf_status ctf_frame_atom_count(const ctf_frame* f, size_t* out);
ctf_status ctf_frame_column(const ctf_frame* f, size_t k, double* out /* 2*dim */);
ctf_status ctf_frame_bounds(const ctf_frame* f, double* lower, double* upper, int* is_frame);
ctf_status ctf_frame_operator(const ctf_frame* f, ctf_operator** out);
/* f_data: 2*dim; out: 2*atom_count. */
ctf_status ctf_frame_analysis(const ctf_frame* f, const double* f_data, double* out);
/* coeff: 2*atom_count; out: 2*dim. */
ctf_status ctf_frame_synthesis(const ctf_frame* f, const double* coeff, double* out);
ctf_status ctf_frame_canonical_dual(const ctf_frame* f, ctf_frame** out);
ctf_status ctf_frame_dual_from_bessel(const ctf_frame* f, const ctf_frame* theta,
                                      ctf_frame** out);
ctf_status ctf_frame_is_dual_pair(const ctf_frame* f, const ctf_frame* g, double tol, int* out);
ctf_status ctf_frame_dual_space_dimension(const ctf_frame* f, size_t* out);
/* Flat tensor-product frame over the product space; columns kron(F1_i, F2_j). */
ctf_status ctf_frame_tensor(const ctf_frame* f1, const ctf_frame* f2, ctf_frame** out);
/* Max column norm. */
ctf_status ctf_frame_norm_bound(const ctf_frame* f, double* out);
ctf_status ctf_frame_to_json(const ctf_frame* f, char** out);
void ctf_frame_destroy(ctf_frame* f);

/* Dual of the tensor frame built from (f1, f2) with at least one column that
 * is not a simple tensor. Requires a redundant frame and factor dims > 1. */
ctf_status ctf_nonsimple_dual(const ctf_frame* f1, const ctf_frame* f2, ctf_frame** out);

/* ---- dense operators --------------------------------------------------- */

ctf_status ctf_operator_create(size_t rows, size_t cols, const double* entries,
                               ctf_operator** out);
ctf_status ctf_operator_rows(const ctf_operator* t, size_t* out);
ctf_status ctf_operator_cols(const ctf_operator* t, size_t* out);
/* Copies 2*rows*cols interleaved doubles, column-major. */
ctf_status ctf_operator_data(const ctf_operator* t, double* out);
ctf_status ctf_operator_kron(const ctf_operator* a, const ctf_operator* b, ctf_operator** out);
ctf_status ctf_operator_trace(const ctf_operator* t, double out[2]);
/* side: 0 contracts the left factor, 1 the right factor. */
ctf_status ctf_operator_partial_trace(const ctf_operator* t, size_t dim_left, size_t dim_right,
                                      int side, ctf_operator** out);
ctf_status ctf_operator_schatten_norm(const ctf_operator* t, double p, double* out);
ctf_status ctf_operator_write_csv(const ctf_operator* t, const char* path);
void ctf_operator_destroy(ctf_operator* t);

/* Schmidt coefficients of a vector in C^{n1} (x) C^{n2} (2*n1*n2 interleaved
 * doubles, index (a,b) = a*n2+b). coeffs receives up to min(n1,n2) values,
 * count the number written. */
ctf_status ctf_schmidt_coefficients(const double* entries, size_t n1, size_t n2, double* coeffs,
                                    size_t* count);
ctf_status ctf_simple_rank(const double* entries, size_t n1, size_t n2, size_t* out);

/* ---- symbols and multipliers ------------------------------------------- */

ctf_status ctf_symbol_create(const ctf_space* space, const double* values, ctf_symbol** out);
ctf_status ctf_symbol_p_norm(const ctf_symbol* m, double p, double* out);
void ctf_symbol_destroy(ctf_symbol* m);

/* M = sum_k w_k m_k G_k F_k^*. */
ctf_status ctf_multiplier(const ctf_symbol* m, const ctf_frame* f, const ctf_frame* g,
                          ctf_operator** out);
/* Operator norm and the bound ||m||_inf sqrt(B_F B_G). */
ctf_status ctf_multiplier_norm_bound(const ctf_symbol* m, const ctf_frame* f, const ctf_frame* g,
                                     double* opnorm, double* bound);
/* Schatten-p norm and the bound ||m||_p (L_F L_G)^(1/p) (B_F B_G)^((p-1)/(2p)). */
ctf_status ctf_multiplier_schatten_bound(const ctf_symbol* m, const ctf_frame* f,
                                         const ctf_frame* g, double p, double* norm,
                                         double* bound);

/* ---- density operators ------------------------------------------------- */

/* ok: the three density invariants hold. diagnostics (when non-NULL):
 * {hermitian defect, min eigenvalue, max eigenvalue, |trace - 1|}. */
ctf_status ctf_is_admissible(const ctf_operator* t, int* ok, double diagnostics[4]);
ctf_status ctf_purity(const ctf_operator* t, double* out);
/* Trace identity for a Gabor multiplier: lhs = trace of the operator,
 * rhs = <psi, phi> * integral of m; windows are 2*n interleaved doubles and m
 * lives on the n^2-atom Gabor grid. */
ctf_status ctf_trace_formula(const ctf_symbol* m, const double* phi, const double* psi, size_t n,
                             double lhs[2], double rhs[2]);
/* Bipartite separable state from positive symbols and Gabor windows; rho1 and
 * rho2 receive the reduced operators. */
ctf_status ctf_separable_density(const ctf_symbol* m1, const ctf_symbol* m2, const double* phi1,
                                 size_t n1, const double* phi2, size_t n2, ctf_operator** rho,
                                 ctf_operator** rho1, ctf_operator** rho2);

/* ---- experiment runner ------------------------------------------------- */

typedef struct ctf_run_options {
  int has_seed;            /* nonzero: seed overrides the config value */
  unsigned long long seed;
  const char* out_path;    /* NULL: keep the config output path */
  const char* format;      /* NULL, "json" or "csv" */
  int quiet;
} ctf_run_options;

/* Runs one experiment from a JSON config, writes the configured output file
 * and returns the JSON report. CTF_OK when every check passed,
 * CTF_ERR_CHECK_FAILED when the experiment ran but a check failed,
 * CTF_ERR_PARSE / CTF_ERR_IO for config and output problems. */
ctf_status ctf_run_experiment(const char* config_json, const ctf_run_options* options,
                              char** report_json);
ctf_status ctf_describe_experiment(const char* name, char** text);

#ifdef __cplusplus
}
#endif

#endif /* CTFRAMES_H */
