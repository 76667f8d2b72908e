#ifndef KODAIRA_H
#define KODAIRA_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KdStatus {
  KD_STATUS_OK = 0,
  KD_STATUS_NULL_POINTER = 1,
  KD_STATUS_INVALID_UTF8 = 2,
  KD_STATUS_PARSE = 3,
  KD_STATUS_SINGULAR = 4,
  KD_STATUS_WILD = 5,
  KD_STATUS_UNSUPPORTED = 6,
  KD_STATUS_INTERNAL = 7,
  KD_STATUS_PANIC = 8,
} KdStatus;

typedef struct KdCurve KdCurve;

typedef struct KdField KdField;

typedef struct KdLocalData KdLocalData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on this thread.
 */
const char *kd_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void kd_string_free(char *s);

/**
 * Parse `qp:P`, `fqt:Q` or `eis:P:POLY`.
 *
 * # Safety
 * `descriptor` must be a nul-terminated string; `out` must be writable.
 */
enum KdStatus kd_field_parse(const char *descriptor, struct KdField **out);

/**
 * # Safety
 * `field` must be null or a handle from [`kd_field_parse`].
 */
void kd_field_free(struct KdField *field);

/**
 * Parse `a1,a2,a3,a4,a6` over `field`. Singular models are rejected.
 *
 * # Safety
 * Pointers must be valid as in [`kd_field_parse`].
 */
enum KdStatus kd_curve_parse(const struct KdField *field,
                             const char *coefficients,
                             struct KdCurve **out);

/**
 * Parse `A,B` for `y^2 = x^3 + A x + B`.
 *
 * # Safety
 * Pointers must be valid as in [`kd_field_parse`].
 */
enum KdStatus kd_curve_parse_short(const struct KdField *field,
                                   const char *coefficients,
                                   struct KdCurve **out);

/**
 * # Safety
 * `curve` must be null or a handle from this library.
 */
void kd_curve_free(struct KdCurve *curve);

/**
 * `[a1,a2,a3,a4,a6]`.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_curve_to_string(const struct KdCurve *curve, char **out);

/**
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_run_tate(const struct KdCurve *curve, struct KdLocalData **out);

/**
 * # Safety
 * `data` must be null or a handle from [`kd_run_tate`].
 */
void kd_local_data_free(struct KdLocalData *data);

/**
 * Kodaira symbol such as `III` or `I3*`.
 *
 * # Safety
 * `data` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_local_data_kodaira(const struct KdLocalData *data, char **out);

/**
 * # Safety
 * `data` must be a live handle, or null (returns 0).
 */
uint32_t kd_local_data_v_disc_min(const struct KdLocalData *data);

/**
 * # Safety
 * `data` must be a live handle, or null (returns 0).
 */
uint32_t kd_local_data_tamagawa(const struct KdLocalData *data);

/**
 * # Safety
 * `data` must be a live handle, or null (returns 0).
 */
uint32_t kd_local_data_eth(const struct KdLocalData *data);

/**
 * # Safety
 * `data` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_local_data_to_json(const struct KdLocalData *data, char **out);

/**
 * Table row and certificate of an additive-reduction curve, as JSON.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_classify_json(const struct KdCurve *curve, char **out);

/**
 * Predicted type and `v(disc)` after a tame extension of degree `e`.
 * Returns `KD_STATUS_WILD` when `e` is divisible by the residue
 * characteristic.
 *
 * # Safety
 * `data` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_predict_json(const struct KdLocalData *data, uint64_t e, char **out);

/**
 * Prediction and direct computation over the default degree-`e`
 * extension (`x^e - p` over `qp`, `t = s^e` over `fqt`), as JSON.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum KdStatus kd_verify_json(const struct KdCurve *curve, uint64_t e, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KODAIRA_H */
