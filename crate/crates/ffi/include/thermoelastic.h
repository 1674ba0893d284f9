#ifndef THERMOELASTIC_H
#define THERMOELASTIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TeStatus {
  TE_STATUS_OK = 0,
  TE_STATUS_NULL_POINTER = 1,
  TE_STATUS_INVALID_PARAMETER = 2,
  TE_STATUS_INVALID_DATUM = 3,
  TE_STATUS_UNSUPPORTED_DIMENSION = 4,
  TE_STATUS_NUMERICAL = 5,
  TE_STATUS_SCENARIO = 6,
  TE_STATUS_IO = 7,
  TE_STATUS_INVALID_UTF8 = 8,
  TE_STATUS_PANIC = 9,
} TeStatus;

typedef enum TeNormKind {
  TE_NORM_KIND_SOLUTION = 0,
  TE_NORM_KIND_ERROR_PHI = 1,
  TE_NORM_KIND_ERROR_PHI_PSI = 2,
  TE_NORM_KIND_PHI = 3,
  TE_NORM_KIND_PSI = 4,
} TeNormKind;

/*
 Opaque model parameters.
 */
typedef struct TeParams TeParams;

/*
 Opaque loaded scenario with its norm engine.
 */
typedef struct TeScenario TeScenario;

typedef struct TeConstants {
  double beta0;
  double beta1;
  double beta2;
  double a1;
  double a2;
} TeConstants;

typedef struct TeRoots {
  double lambda1;
  double lambda_r;
  double lambda_i;
} TeRoots;

/*
 `u^ = m_u0 u0^ + m_u1 u1^ + i xi_k m_theta theta0^`.
 */
typedef struct TeMultipliers {
  double m_u0;
  double m_u1;
  double m_theta;
} TeMultipliers;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message (NUL-terminated, truncated to `len`) into
 `buf` and returns the full message length in bytes.

 # Safety
 `buf` must be null or valid for `len` bytes.
 */
uintptr_t te_last_error_message(char *buf, uintptr_t len);

/*
 # Safety
 `out` must be valid for writing one pointer.
 */
enum TeStatus te_params_new(double kappa,
                            double a,
                            double b,
                            double gamma1,
                            double gamma2,
                            struct TeParams **out);

/*
 # Safety
 `p` must be null or a handle from `te_params_new` not yet freed.
 */
void te_params_free(struct TeParams *p);

/*
 # Safety
 `p` must be a live handle and `out` valid for writing.
 */
enum TeStatus te_derive_constants(const struct TeParams *p, struct TeConstants *out);

/*
 # Safety
 `p` must be a live handle and `out` valid for writing.
 */
enum TeStatus te_char_roots(const struct TeParams *p, double r, struct TeRoots *out);

/*
 # Safety
 `p` must be a live handle and `out` valid for writing.
 */
enum TeStatus te_solution_multipliers(const struct TeParams *p,
                                      double r,
                                      double t,
                                      struct TeMultipliers *out);

/*
 Loads and validates a TOML scenario file.

 # Safety
 `path` must be a NUL-terminated string and `out` valid for writing.
 */
enum TeStatus te_scenario_load(const char *path, struct TeScenario **out);

/*
 # Safety
 `s` must be null or a handle from `te_scenario_load` not yet freed.
 */
void te_scenario_free(struct TeScenario *s);

/*
 Physical-space L2 norm at time `t`; `kind` is a `TeNormKind` value.

 # Safety
 `s` must be a live handle and `out` valid for writing.
 */
enum TeStatus te_scenario_norm(const struct TeScenario *s, int32_t kind, double t, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THERMOELASTIC_H */
