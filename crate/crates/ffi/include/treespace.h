#ifndef TREESPACE_H
#define TREESPACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Coefficient ring for bracket normalization.
 */
typedef enum {
  TS_FLAVOR_ORDINARY = 0,
  TS_FLAVOR_SUPER = 1,
} TsFlavor;

/**
 * Modules with a character table.
 */
typedef enum {
  TS_MODULE_LIE = 0,
  TS_MODULE_SUPER_LIE = 1,
  TS_MODULE_HAT_LIE = 2,
} TsModule;

/**
 * Which complex to build.
 */
typedef enum {
  TS_SPACE_TREE_SPACE = 0,
  TS_SPACE_PARTITION_NERVE = 1,
} TsSpace;

/**
 * Result codes.
 */
typedef enum {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_ARGUMENT = 2,
  TS_STATUS_OUT_OF_RANGE = 3,
  TS_STATUS_BUFFER_TOO_SMALL = 4,
  TS_STATUS_PARSE_ERROR = 5,
  TS_STATUS_VERIFICATION_FAILED = 6,
  TS_STATUS_INTERNAL = 7,
} TsStatus;

/**
 * Opaque handle to a built complex.
 */
typedef struct TsComplex TsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *ts_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void ts_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *ts_version(void);

/**
 * Build `T_n` or the partition nerve of `{1..n}`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
TsStatus ts_complex_build(TsSpace space, size_t n, TsComplex **out);

/**
 * Release a complex. Null is ignored.
 *
 * # Safety
 * `c` must be null or a handle from [`ts_complex_build`] not yet freed.
 */
void ts_complex_free(TsComplex *c);

/**
 * Number of simplices in each dimension.
 *
 * # Safety
 * `c` must be a live handle; see the module docs for the buffer contract.
 */
TsStatus ts_complex_f_vector(const TsComplex *c, size_t *out, size_t cap, size_t *out_len);

/**
 * Euler characteristic.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
TsStatus ts_complex_euler_characteristic(const TsComplex *c, int64_t *out);

/**
 * Betti numbers in degrees `0..=dim`, reduced or not. Torsion is reported
 * through `has_torsion` (may be null).
 *
 * # Safety
 * `c` must be a live handle; see the module docs for the buffer contract.
 */
TsStatus ts_complex_betti(const TsComplex *c,
                          bool reduced,
                          size_t *out,
                          size_t cap,
                          size_t *out_len,
                          bool *has_torsion);

/**
 * Write the complex dump (JSON) to a new string.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
TsStatus ts_complex_dump(const TsComplex *c, char **out);

/**
 * Whether the fundamental cycle of `T_n` has zero boundary (4 <= n <= 7).
 *
 * # Safety
 * `is_cycle` must be valid for writes.
 */
TsStatus ts_fundamental_cycle_check(size_t n, bool *is_cycle);

/**
 * Normalize a bracket sum such as `"[a,[b,c]] - [b,[a,c]]"`; the result is
 * written as bracket text to a new string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
TsStatus ts_normalize(const char *text, TsFlavor flavor, char **out);

/**
 * Character values, one per cycle type with the identity first (the order
 * of partitions from `1^m` down to `[m]`).
 *
 * # Safety
 * See the module docs for the buffer contract.
 */
TsStatus ts_character(TsModule module, size_t n, int64_t *out, size_t cap, size_t *out_len);

/**
 * Run the `verify` checks and return the JSON report. Returns
 * `TS_STATUS_VERIFICATION_FAILED` (with the report still written) if any
 * check fails.
 *
 * # Safety
 * `out` must be valid for writes.
 */
TsStatus ts_verify_json(size_t n, bool full, uint64_t seed, char **out);

/**
 * Character table of a module as a JSON report.
 *
 * # Safety
 * `out` must be valid for writes.
 */
TsStatus ts_character_json(TsModule module, size_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREESPACE_H */
