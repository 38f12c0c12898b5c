#ifndef ORLICZ_ORLICZ_H
#define ORLICZ_ORLICZ_H

/* C interface to the Orlicz gauge library.  Objects are opaque handles
 * released with the matching *_free; every call returns an og_status and,
 * on failure, leaves a message for og_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller: og_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(ORLICZ_BUILDING_LIBRARY)
#define OG_API __attribute__((visibility("default")))
#else
#define OG_API
#endif

typedef enum og_status {
  OG_OK = 0,
  OG_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer, bad size */
  OG_ERR_DOMAIN = 2,           /* mathematical precondition failed */
  OG_ERR_CONFIG = 3,           /* malformed spec or config; message names the field */
  OG_ERR_IO = 4,
  OG_ERR_INTERNAL = 5
} og_status;

typedef struct og_function og_function;   /* nonnegative step function */
typedef struct og_nfunction og_nfunction; /* N-function */
typedef struct og_weight og_weight;       /* weight with exact cumulative */
typedef struct og_kernel og_kernel;       /* sampled two-variable kernel */

OG_API const char* og_version(void);
OG_API const char* og_last_error(void);
OG_API void og_string_free(char* s);
/* Worker threads for parallel loops; 0 restores the default. */
OG_API void og_set_threads(int n);

/* Step functions.  Specs are sampled on `cells` log-uniform cells of [lo, hi]. */
OG_API og_status og_function_from_spec(const char* spec, double lo, double hi, size_t cells,
                                       og_function** out);
OG_API og_status og_function_from_file(const char* path, og_function** out);
/* edges has n + 1 entries, values n. */
OG_API og_status og_function_from_cells(const double* edges, const double* values, size_t n,
                                        og_function** out);
OG_API void og_function_free(og_function* f);
OG_API size_t og_function_size(const og_function* f);
OG_API og_status og_function_cells(const og_function* f, double* edges, double* values);
/* One "lo hi value" line per cell. */
OG_API og_status og_function_to_text(const og_function* f, char** out);
OG_API og_status og_function_rearrange(const og_function* f, og_function** out);
OG_API og_status og_function_distribution(const og_function* f, double lambda, double* out);
OG_API og_status og_function_maximal(const og_function* f, double t, double* out);
OG_API og_status og_function_integral(const og_function* f, double* out);

OG_API og_status og_nfunction_from_spec(const char* spec, og_nfunction** out);
OG_API void og_nfunction_free(og_nfunction* phi);
OG_API og_status og_nfunction_value(const og_nfunction* phi, double t, double* out);
OG_API og_status og_nfunction_inverse(const og_nfunction* phi, double y, double* out);
OG_API og_status og_nfunction_complementary(const og_nfunction* phi, og_nfunction** out);

OG_API og_status og_weight_from_spec(const char* spec, og_weight** out);
OG_API void og_weight_free(og_weight* u);
OG_API og_status og_weight_cumulative(const og_weight* u, double x, double* out);

/* Luxemburg gauge of f for Phi and u; +inf is a valid result. */
OG_API og_status og_gauge_norm(const og_function* f, const og_nfunction* phi, const og_weight* u,
                               double* out);
/* Same with "gauge(phi=...,u=...)". */
OG_API og_status og_gauge_norm_spec(const og_function* f, const char* gauge_spec, double* out);

OG_API og_status og_kernel_from_spec(const char* spec, double lo, double hi, size_t cells,
                                     og_kernel** out);
OG_API void og_kernel_free(og_kernel* k);
OG_API og_status og_kernel_apply(const og_kernel* k, const og_function* f, og_function** out);
OG_API og_status og_kernel_iterated_rearrangement(const og_kernel* k, og_kernel** out);
/* One "x_lo x_hi y_lo y_hi value" line per cell. */
OG_API og_status og_kernel_to_text(const og_kernel* k, char** out);

/* JSON in, JSON out. */
OG_API og_status og_check_json(const char* request, char** out);
OG_API og_status og_oneil_json(const char* request, char** out);
/* Runs an experiment config file, writes report.json and report.csv into
 * out_dir, and returns the JSON report through `report` (may be NULL). */
OG_API og_status og_run_config(const char* config_path, const char* out_dir, char** report);
OG_API og_status og_run_config_json(const char* config, const char* out_dir, char** report);

#ifdef __cplusplus
}
#endif

#endif
