/* C interface to the gasket BVP library.
 *
 * All functions return GBVP_OK (0) on success; on failure they return a
 * nonzero code and leave a message retrievable with gbvp_last_error()
 * (thread-local).  Strings handed out by the library are heap-allocated
 * and must be released with gbvp_free(). */
#ifndef GASKETBVP_H
#define GASKETBVP_H

#ifdef __cplusplus
extern "C" {
#endif

#define GBVP_OK 0
#define GBVP_ERR_INVALID 1 /* bad arguments / specs / schemas */
#define GBVP_ERR_RUNTIME 2 /* internal failure */

typedef struct gbvp_domain gbvp_domain;
typedef struct gbvp_spectrum gbvp_spectrum;

const char* gbvp_last_error(void);
void gbvp_free(char* text);

/* Threads used by the linear solvers; 0 restores the library default.
 * The GASKET_BVP_THREADS environment variable is read at first use. */
int gbvp_set_threads(int threads);

/* --- domains ------------------------------------------------------- */

/* x_spec: decimal ("0.8125"), exponent list ("1,3,5"),
 * "arith:a,d", or "periodic:p1,..,pr".  level: mesh level L >= n_K. */
int gbvp_domain_create(const char* x_spec, int depth, int level, gbvp_domain** out);
void gbvp_domain_destroy(gbvp_domain* dom);
int gbvp_domain_info(const gbvp_domain* dom, int* depth, int* level, double* x_value);
int gbvp_domain_mesh_json(const gbvp_domain* dom, char** json_out);

/* --- harmonic ratios ----------------------------------------------- */

int gbvp_ratios(const char* x_spec, int depth, double* m0, double* m1, double* m2,
                double* error_bound);
/* per-level table: "level,n,m0,est_error" CSV */
int gbvp_ratio_table_csv(const char* x_spec, int depth, char** csv_out);
/* n samples of (x, m0(x)) on [a, b]: "x,m0" CSV.  Sample points whose
 * dyadic expansion terminates after one term are skipped. */
int gbvp_ratio_sweep_csv(double a, double b, int n, int depth, char** csv_out);

/* --- spectra -------------------------------------------------------- */

int gbvp_spectrum_from_json(const char* json_text, gbvp_spectrum** out);
void gbvp_spectrum_destroy(gbvp_spectrum* spec);

/* --- solvers -------------------------------------------------------- */

/* harmonic function with the given boundary spectrum; CSV rows
 * vertex_id,x,y,value over Omega_x */
int gbvp_solve_harmonic_csv(const gbvp_domain* dom, const gbvp_spectrum* spec, char** csv_out);

/* -Lap u = F with zero boundary values via the Green's kernel at
 * truncation m; forcing is constant for now ("const:<v>" handled by the
 * CLI). */
int gbvp_solve_green_csv(const gbvp_domain* dom, double forcing, int m, char** csv_out);

/* Dirichlet-to-Neumann image of the spectrum as flux JSON (closed form,
 * no mesh needed) */
int gbvp_solve_dtn_json(const char* x_spec, int depth, const gbvp_spectrum* spec,
                        char** json_out);

/* --- verification ---------------------------------------------------- */

/* group: ratios | energies | dtn | glue | extension | green.
 * trials = 0 keeps per-group defaults.  *passed is 1/0. */
int gbvp_verify_group(const char* group, unsigned long long seed, int trials,
                      char** report_out, int* passed);
/* comma-separated list of valid group names */
int gbvp_verify_groups(char** names_out);

#ifdef __cplusplus
}
#endif

#endif
