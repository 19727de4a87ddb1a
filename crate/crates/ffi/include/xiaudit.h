#ifndef XIAUDIT_H
#define XIAUDIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum XiFunction {
  XI_FUNCTION_ZETA = 0,
  XI_FUNCTION_GAMMA = 1,
  XI_FUNCTION_XI = 2,
  XI_FUNCTION_PSI = 3,
} XiFunction;

typedef enum XiPart {
  XI_PART_REAL = 0,
  XI_PART_IMAG = 1,
} XiPart;

typedef enum XiScope {
  XI_SCOPE_SECTION4 = 0,
  XI_SCOPE_SECTION5 = 1,
  XI_SCOPE_ALL = 2,
} XiScope;

typedef enum XiStatus {
  XI_STATUS_OK = 0,
  XI_STATUS_INVALID_ARGUMENT = 1,
  XI_STATUS_PARSE = 2,
  XI_STATUS_DOMAIN = 3,
  XI_STATUS_PRECISION_EXHAUSTED = 4,
  XI_STATUS_VALIDATION = 5,
  XI_STATUS_IO = 6,
  XI_STATUS_PANIC = 7,
} XiStatus;

/**
 * Complex enclosure.
 */
typedef struct XiBall XiBall;

/**
 * Zero catalog.
 */
typedef struct XiCatalog XiCatalog;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on this thread.
 */
const char *xiaudit_last_error(void);

/**
 * Evaluate `f` at `re + i*im` (decimal strings; `im` may be null) with
 * `prec` bits.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum XiStatus xiaudit_eval(enum XiFunction f,
                           const char *re,
                           const char *im,
                           uint32_t prec,
                           struct XiBall **out);

/**
 * Midpoint and radius of one part of `ball` as decimal strings.
 *
 * # Safety
 * `ball` must come from this library; `mid` and `rad` must be writable.
 */
enum XiStatus xiaudit_ball_part(const struct XiBall *ball,
                                enum XiPart part,
                                char **mid,
                                char **rad);

/**
 * Upper bound on the radius of one part as a double.
 *
 * # Safety
 * `ball` must be null or come from this library.
 */
double xiaudit_ball_radius(const struct XiBall *ball, enum XiPart part);

/**
 * # Safety
 * `ball` must be null or come from this library, and not be used again.
 */
void xiaudit_ball_free(struct XiBall *ball);

/**
 * Parse a plain ordinate table held in memory.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum XiStatus xiaudit_catalog_parse(const char *text, double accuracy, struct XiCatalog **out);

/**
 * Load a plain ordinate table or a saved catalog from `path`.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be writable.
 */
enum XiStatus xiaudit_catalog_load(const char *path, double accuracy, struct XiCatalog **out);

/**
 * Number of entries; 0 for null.
 *
 * # Safety
 * `cat` must be null or come from this library.
 */
size_t xiaudit_catalog_len(const struct XiCatalog *cat);

/**
 * # Safety
 * `cat` must be null or come from this library, and not be used again.
 */
void xiaudit_catalog_free(struct XiCatalog *cat);

/**
 * Sum of `lambda_m^power` (power 1 or 2) with its certified tail.
 *
 * # Safety
 * `cat` must come from this library; `out` must be writable.
 */
enum XiStatus xiaudit_sum_lambda_power(const struct XiCatalog *cat,
                                       uint32_t power,
                                       double slack,
                                       uint32_t prec,
                                       struct XiBall **out);

/**
 * Audit report as JSON. `cat` may be null for `XI_SCOPE_SECTION5`.
 * `prec_cap` of 0 keeps the default.
 *
 * # Safety
 * `cat` must be null or come from this library; `out` must be writable.
 */
enum XiStatus xiaudit_audit_json(enum XiScope scope,
                                 const struct XiCatalog *cat,
                                 uint32_t prec_cap,
                                 char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void xiaudit_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* XIAUDIT_H */
