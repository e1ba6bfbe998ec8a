#ifndef SILTING_H
#define SILTING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SiltOutcome {
  SILT_OUTCOME_HOLDS = 0,
  SILT_OUTCOME_FAILS = 1,
  SILT_OUTCOME_INCONCLUSIVE = 2,
} SiltOutcome;

typedef enum SiltProperty {
  SILT_PROPERTY_TAU_RIGID = 0,
  SILT_PROPERTY_TAU_TILTING = 1,
  SILT_PROPERTY_N_TILTING = 2,
  SILT_PROPERTY_PRESILTING = 3,
  SILT_PROPERTY_TEO = 4,
} SiltProperty;

typedef enum SiltStatus {
  SILT_STATUS_OK = 0,
  SILT_STATUS_NULL_POINTER = 1,
  SILT_STATUS_INVALID_UTF8 = 2,
  SILT_STATUS_INVALID_INPUT = 3,
  SILT_STATUS_PRECONDITION = 4,
  SILT_STATUS_COMPUTATION = 5,
  SILT_STATUS_PANIC = 6,
} SiltStatus;

typedef struct SiltAlgebra SiltAlgebra;

typedef struct SiltModule SiltModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next call on the same thread.
 */
const char *silt_last_error(void);

/*
 # Safety
 `s` must come from this library, or be null.
 */
void silt_string_free(char *s);

/*
 Builds an algebra from its JSON description. `field` is null or `"Q"` /
 `"Fp:<p>"` and overrides the field in the JSON.

 # Safety
 Pointers must be valid; `json` and `field` NUL-terminated.
 */
enum SiltStatus silt_algebra_from_json(const char *json,
                                       const char *field,
                                       struct SiltAlgebra **out);

/*
 The algebra of a bundled fixture pack (`eximp`, `ejp1`, `radsq3`,
 `gamma-eximp`); `field` defaults to `F_2`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum SiltStatus silt_algebra_from_fixture(const char *name,
                                          const char *field,
                                          struct SiltAlgebra **out);

/*
 # Safety
 `alg` must come from this library, or be null.
 */
void silt_algebra_free(struct SiltAlgebra *alg);

/*
 # Safety
 `alg` must be a valid handle.
 */
size_t silt_algebra_dim(const struct SiltAlgebra *alg);

/*
 # Safety
 Pointers must be valid; `json` NUL-terminated.
 */
enum SiltStatus silt_module_from_json(const struct SiltAlgebra *alg,
                                      const char *json,
                                      struct SiltModule **out);

/*
 A named module of a fixture pack, or `P(v)`, `I(v)`, `S(v)`, `A`, over
 the algebra `alg` (which must be that pack's algebra).

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum SiltStatus silt_module_from_fixture(const struct SiltAlgebra *alg,
                                         const char *pack,
                                         const char *name,
                                         struct SiltModule **out);

/*
 # Safety
 `m` must come from this library, or be null.
 */
void silt_module_free(struct SiltModule *m);

/*
 # Safety
 `m` must be a valid handle.
 */
size_t silt_module_dim(const struct SiltModule *m);

/*
 # Safety
 Pointers must be valid. The string is released with [`silt_string_free`].
 */
enum SiltStatus silt_module_to_json(const struct SiltModule *m, char **out);

/*
 `tau_n(M)` as a new module handle.

 # Safety
 Pointers must be valid.
 */
enum SiltStatus silt_tau_n(const struct SiltModule *m, uint32_t n, struct SiltModule **out);

/*
 `dim Ext^i(M, N)`.

 # Safety
 Pointers must be valid; both modules over the same algebra.
 */
enum SiltStatus silt_ext_dim(const struct SiltModule *m,
                             const struct SiltModule *n,
                             uint32_t i,
                             size_t *out);

/*
 Whether `N` lies in the `tau_n` perpendicular category of `M`.

 # Safety
 Pointers must be valid; both modules over the same algebra.
 */
enum SiltStatus silt_in_perp(const struct SiltModule *n_mod,
                             const struct SiltModule *m,
                             uint32_t n,
                             bool *out);

/*
 Decides `prop` for `M`. `m` is only read for `TauTilting`, where a
 nonzero value asks for `tau_{n,m}`-tilting. `json` may be null;
 otherwise it receives the verdict with its certificate.

 # Safety
 Pointers must be valid.
 */
enum SiltStatus silt_check(const struct SiltModule *module,
                           enum SiltProperty prop,
                           uint32_t n,
                           uint32_t m,
                           enum SiltOutcome *outcome,
                           char **json);

/*
 Runs a claim suite over the bundled fixtures and returns the report.

 # Safety
 Pointers must be valid; `field` may be null.
 */
enum SiltStatus silt_verify(const char *suite,
                            const char *field,
                            enum SiltOutcome *outcome,
                            char **json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SILTING_H */
