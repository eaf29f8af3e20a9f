#ifndef TWISTCAT_H
#define TWISTCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TwistcatStatus {
  TWISTCAT_STATUS_OK = 0,
  TWISTCAT_STATUS_NULL_ARGUMENT = 1,
  TWISTCAT_STATUS_INVALID_UTF8 = 2,
  TWISTCAT_STATUS_INVALID_INPUT = 3,
  TWISTCAT_STATUS_UNSUPPORTED = 4,
  TWISTCAT_STATUS_FAILED = 5,
  TWISTCAT_STATUS_PANIC = 6,
} TwistcatStatus;

/**
 * Opaque supercharge handle.
 */
typedef struct TwistcatSupercharge TwistcatSupercharge;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a supercharge of the standard algebra `(dim, aux)` from the JSON accepted by
 * `twistcat classify --in`. `aux` reads like `"N=2"` or `"N=(1,1)"`.
 *
 * # Safety
 * `aux` and `json` are NUL-terminated strings; `out` is writable.
 */
enum TwistcatStatus twistcat_supercharge_from_json(size_t dim,
                                                   const char *aux,
                                                   const char *json,
                                                   struct TwistcatSupercharge **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `q` is null or a live handle, and is not used afterwards.
 */
void twistcat_supercharge_free(struct TwistcatSupercharge *q);

/**
 * # Safety
 * `q` is a live handle; `out` is writable.
 */
enum TwistcatStatus twistcat_supercharge_is_square_zero(const struct TwistcatSupercharge *q,
                                                        bool *out);

/**
 * Classification as JSON, in the shape of `twistcat classify`.
 *
 * # Safety
 * `q` is a live handle; `out` is writable.
 */
enum TwistcatStatus twistcat_classify(const struct TwistcatSupercharge *q, char **out);

/**
 * Abelian section as JSON, in the shape of `twistcat section`.
 *
 * # Safety
 * `q` is a live handle; `out` is writable.
 */
enum TwistcatStatus twistcat_section(const struct TwistcatSupercharge *q, char **out);

/**
 * Catalogue replay report for one algebra as JSON. `passed` reports the verdict.
 *
 * # Safety
 * `aux` is a NUL-terminated string; `out` and `passed` are writable.
 */
enum TwistcatStatus twistcat_verify_catalogue(size_t dim,
                                              const char *aux,
                                              size_t samples,
                                              uint64_t seed,
                                              bool *passed,
                                              char **out);

/**
 * Message for the last failure on this thread, or null. Release with [`twistcat_string_free`].
 */
char *twistcat_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or came from this library, and is not used afterwards.
 */
void twistcat_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *twistcat_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTCAT_H */
