#ifndef GROUPLOGIC_H
#define GROUPLOGIC_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  /**
   * A verification found a counterexample.
   */
  FG_STATUS_CHECK_FAILED = 1,
  /**
   * Bad input: syntax, unknown names, invalid elements.
   */
  FG_STATUS_INVALID = 2,
  /**
   * A size cap or work budget was exceeded.
   */
  FG_STATUS_TOO_LARGE = 3,
  FG_STATUS_NULL_POINTER = 4,
  /**
   * The output buffer is too small; the needed length was written.
   */
  FG_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Internal error.
   */
  FG_STATUS_PANIC = 6,
} FgStatus;

/**
 * A parsed first-order formula.
 */
typedef struct FgFormula FgFormula;

/**
 * A finite group.
 */
typedef struct FgGroup FgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *fg_last_error(void);

/**
 * Builds a group from a group-spec text such as `"sym 4"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FgStatus fg_group_from_spec(const char *spec, struct FgGroup **out);

/**
 * Builds a group from a row-major `order × order` Cayley table with the
 * identity at id 0.
 *
 * # Safety
 * `table` must point to `order * order` readable values.
 */
enum FgStatus fg_group_from_table(const uint32_t *table, size_t order, struct FgGroup **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void fg_group_free(struct FgGroup *g);

/**
 * Order of the group, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t fg_group_order(const struct FgGroup *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum FgStatus fg_group_mul(const struct FgGroup *g, uint32_t a, uint32_t b, uint32_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum FgStatus fg_group_inv(const struct FgGroup *g, uint32_t a, uint32_t *out);

/**
 * # Safety
 * `g` must be a live handle and `nilpotent`, `soluble` valid pointers.
 */
enum FgStatus fg_group_structure(const struct FgGroup *g,
                                 bool *nilpotent,
                                 bool *soluble,
                                 size_t *radical_order);

/**
 * Parses a formula.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FgStatus fg_formula_parse(const char *src, struct FgFormula **out);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards.
 */
void fg_formula_free(struct FgFormula *f);

/**
 * Truth of a sentence, with `rad` and `fit` bound to the soluble radical
 * and the Fitting subgroup.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum FgStatus fg_eval(const struct FgGroup *g, const struct FgFormula *f, bool *out);

/**
 * Element ids `h` with `f(h)` true, `var` being the only free variable.
 * Writes the count to `len`; if it exceeds `cap`, nothing else is written
 * and `BufferTooSmall` is returned.
 *
 * # Safety
 * Handles must be live, `var` NUL-terminated, `buf` writable for `cap`
 * values (or null with `cap == 0`) and `len` a valid pointer.
 */
enum FgStatus fg_definable_set(const struct FgGroup *g,
                               const struct FgFormula *f,
                               const char *var,
                               uint32_t *buf,
                               size_t cap,
                               size_t *len);

/**
 * Library version as a static string.
 */
const char *fg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPLOGIC_H */
