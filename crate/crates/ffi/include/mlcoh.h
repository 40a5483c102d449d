#ifndef MLCOH_H
#define MLCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; `MLCOH_STATUS_OK` is zero.
 */
typedef enum MlcohStatus {
  MLCOH_STATUS_OK = 0,
  MLCOH_STATUS_NULL_ARGUMENT = 1,
  MLCOH_STATUS_INVALID_UTF8 = 2,
  MLCOH_STATUS_PARSE_ERROR = 3,
  MLCOH_STATUS_UNKNOWN_NAME = 4,
  /**
   * The requested invariant is not defined (no directions).
   */
  MLCOH_STATUS_UNDEFINED = 5,
  MLCOH_STATUS_PRECONDITION_FAILED = 6,
  MLCOH_STATUS_INCONSISTENT = 7,
  MLCOH_STATUS_PANIC = 8,
} MlcohStatus;

/**
 * A parsed instance file.
 */
typedef struct MlcohInstance MlcohInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses instance text into a new handle stored in `*out`.
 *
 * # Safety
 * `source` is a NUL-terminated string; `out` is writable.
 */
enum MlcohStatus mlcoh_instance_parse(const char *source, struct MlcohInstance **out);

/**
 * Releases a handle; NULL is ignored.
 *
 * # Safety
 * `h` is NULL or an unreleased handle from [`mlcoh_instance_parse`].
 */
void mlcoh_instance_free(struct MlcohInstance *h);

/**
 * 64-bit hash of the canonical serialization; 0 for NULL.
 *
 * # Safety
 * `h` is NULL or a live handle.
 */
uint64_t mlcoh_instance_hash(const struct MlcohInstance *h);

/**
 * Coarse support of `H^i_b(M)` as `{"rank":…, "boxes":[…]}`.
 *
 * # Safety
 * `h` is a live handle, the strings are NUL-terminated, `out` is writable.
 */
enum MlcohStatus mlcoh_support_json(const struct MlcohInstance *h,
                                    const char *ideal,
                                    const char *module,
                                    size_t index,
                                    char **out);

/**
 * `end(H^i_b(M))` as `{"directions":[…], "points":[[…],…]}`.
 *
 * # Safety
 * As for [`mlcoh_support_json`].
 */
enum MlcohStatus mlcoh_end_json(const struct MlcohInstance *h,
                                const char *ideal,
                                const char *module,
                                size_t index,
                                char **out);

/**
 * `g^Q_b(M)` as `{"value": n | "inf", "witnesses": [...]}`; `q` is a
 * 1-based color set such as `{1,2}`.
 *
 * # Safety
 * As for [`mlcoh_support_json`].
 */
enum MlcohStatus mlcoh_gdim_json(const struct MlcohInstance *h,
                                 const char *ideal,
                                 const char *module,
                                 const char *q,
                                 char **out);

/**
 * Evaluates one task call such as `fdim(b, b, M)`; the rendered value
 * is returned as a JSON string.
 *
 * # Safety
 * As for [`mlcoh_support_json`].
 */
enum MlcohStatus mlcoh_task_json(const struct MlcohInstance *h, const char *call, char **out);

/**
 * Runs every check; `*passed` is 1 when none failed.
 *
 * # Safety
 * As for [`mlcoh_support_json`]; `passed` is writable.
 */
enum MlcohStatus mlcoh_verify_json(const struct MlcohInstance *h,
                                   const char *label,
                                   char **out,
                                   int32_t *passed);

/**
 * Releases a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` is NULL or an unreleased string from this library.
 */
void mlcoh_string_free(char *s);

/**
 * Message of the last failure on this thread, or NULL.
 */
const char *mlcoh_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLCOH_H */
