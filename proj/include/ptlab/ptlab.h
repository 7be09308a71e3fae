/*
 * C interface to the ptlab library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns a ptlab_status; on failure a
 * description is available from ptlab_last_error() on the same thread until
 * the next failing call.
 */
#ifndef PTLAB_H
#define PTLAB_H

#include <stddef.h>

#if defined(PTLAB_BUILDING_LIBRARY)
#  define PTLAB_API __attribute__((visibility("default")))
#else
#  define PTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptlab_status {
  PTLAB_OK = 0,
  PTLAB_ERR_INTERNAL = 1,
  PTLAB_ERR_CONFIG = 2,    /* malformed config or argument outside its domain */
  PTLAB_ERR_NUMERICAL = 3, /* eigensolver non-convergence, overflow */
  PTLAB_ERR_IO = 4
} ptlab_status;

typedef struct ptlab_config ptlab_config;
typedef struct ptlab_result ptlab_result;

PTLAB_API const char* ptlab_version(void);
PTLAB_API const char* ptlab_last_error(void);

/* Configuration (JSON text). */
PTLAB_API ptlab_status ptlab_config_parse(const char* text, size_t length, ptlab_config** out);
PTLAB_API ptlab_status ptlab_config_load(const char* path, ptlab_config** out);
PTLAB_API void ptlab_config_free(ptlab_config* config);
/* Scenario name, e.g. "scan_kappa". Valid while config lives. */
PTLAB_API const char* ptlab_config_scenario(const ptlab_config* config);
/* Output path from the config, "" for standard output. */
PTLAB_API const char* ptlab_config_output(const ptlab_config* config);
/* Normalized JSON echo. Valid while config lives. */
PTLAB_API const char* ptlab_config_echo(const ptlab_config* config);

/* Runs the scenario with up to `threads` workers (0 means 1). A run that
 * completes but records an overflow returns PTLAB_ERR_NUMERICAL and still
 * sets *out. */
PTLAB_API ptlab_status ptlab_run(const ptlab_config* config, unsigned threads, ptlab_result** out);
PTLAB_API void ptlab_result_free(ptlab_result* result);
PTLAB_API size_t ptlab_result_table_count(const ptlab_result* result);
/* Table name and CSV text; NULL for an out-of-range index. */
PTLAB_API const char* ptlab_result_table_name(const ptlab_result* result, size_t index);
PTLAB_API const char* ptlab_result_table_csv(const ptlab_result* result, size_t index);

/* Numerical entry points. Complex values are (re, im) pairs. */
PTLAB_API ptlab_status ptlab_bessel_j(int order, double x, double* out);
PTLAB_API ptlab_status ptlab_effective_coupling_monochromatic(int l, double kappa, double phi, double out[2]);
/* Dimer energies (E_-, E_+) as out[0..3]. */
PTLAB_API ptlab_status ptlab_dimer_spectrum(double t, int l, double kappa, double gamma, double out[4]);
/* Eigenvalues of the n x n row-major complex matrix `entries` (2 n^2 doubles),
 * sorted by (real, imag), written to out (2 n doubles). */
PTLAB_API ptlab_status ptlab_eigenvalues(size_t n, const double* entries, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PTLAB_H */
