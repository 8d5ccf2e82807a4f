/* C interface to the phasecoh library. Strings returned through char** are
 * owned by the caller and released with phasecoh_string_free. */
#ifndef PHASECOH_H
#define PHASECOH_H

#include <stdint.h>

#if defined(PHASECOH_BUILDING)
#define PHASECOH_API __attribute__((visibility("default")))
#else
#define PHASECOH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum phasecoh_status {
  PHASECOH_OK = 0,
  PHASECOH_ERR_INVALID = 1,
  PHASECOH_ERR_DIMENSION = 2,
  PHASECOH_ERR_LABEL = 3,
  PHASECOH_ERR_SOLVER = 4,
  PHASECOH_ERR_VERIFICATION = 5,
  PHASECOH_ERR_INTERNAL = 6
};

typedef struct phasecoh_cost phasecoh_cost;
typedef struct phasecoh_state phasecoh_state;

PHASECOH_API const char* phasecoh_version(void);
/* Message of the last failed call on this thread; empty when none. */
PHASECOH_API const char* phasecoh_last_error(void);
PHASECOH_API void phasecoh_string_free(char* s);

PHASECOH_API int phasecoh_cost_from_spec(const char* spec, phasecoh_cost** out);
PHASECOH_API int phasecoh_cost_json(const phasecoh_cost* cost, char** out_json);
PHASECOH_API void phasecoh_cost_free(phasecoh_cost* cost);

/* `d` sizes builtin specs such as "max-coherent" or "random:<seed>". */
PHASECOH_API int phasecoh_state_from_spec(const char* spec, int d, phasecoh_state** out);
PHASECOH_API int phasecoh_state_random(int d, uint64_t seed, phasecoh_state** out);
PHASECOH_API int phasecoh_state_dim(const phasecoh_state* state, int* out);
PHASECOH_API int phasecoh_state_json(const phasecoh_state* state, char** out_json);
PHASECOH_API void phasecoh_state_free(phasecoh_state* state);

PHASECOH_API int phasecoh_cost_matrix_json(const phasecoh_cost* cost, int m, char** out_json);
/* Single-copy optimum with dual, weight bound and consistency flags. */
PHASECOH_API int phasecoh_cmin_json(const phasecoh_state* state, const phasecoh_cost* cost, int m, char** out_json);
PHASECOH_API int phasecoh_cmin(const phasecoh_state* state, const phasecoh_cost* cost, int m, double* out);
/* Multi-copy comb optimum for n uses of a d-level phase unitary. */
PHASECOH_API int phasecoh_comb_json(const phasecoh_state* state, const phasecoh_cost* cost, int d, int n,
                                    char** out_json);

/* Random-state sweep. `ensemble` is "ginibre", "pure" or "isotropic". The CSV
 * starts with a "# generated <stamp>" line unless `stamp` is NULL or empty.
 * Failed rows are marked in the CSV and listed in *out_log. */
PHASECOH_API int phasecoh_sweep(const phasecoh_cost* cost, int d, int m, int count, uint64_t seed, int jobs,
                                const char* ensemble, const char* stamp, char** out_csv, char** out_svg,
                                char** out_log);

/* Acceptance checks. `only` is a comma-separated id list or NULL; `tol` > 0
 * raises every threshold to at least tol. `on_line` receives one formatted
 * line per finished check. Returns PHASECOH_ERR_VERIFICATION when any fails. */
PHASECOH_API int phasecoh_verify(const char* only, double tol, uint64_t seed,
                                 void (*on_line)(const char* line, void* user), void* user, char** out_json);
PHASECOH_API int phasecoh_criteria(char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
