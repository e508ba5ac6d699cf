#ifndef AFFINE_INDEX_H
#define AFFINE_INDEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum AipStatus {
  AIP_STATUS_OK = 0,
  /**
   * Null pointer, unknown crossing, wrong number of components and the like.
   */
  AIP_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Text that is not a valid code or biquandle description.
   */
  AIP_STATUS_PARSE = 2,
  /**
   * The diagram admits no Cheng coloring.
   */
  AIP_STATUS_UNCOLORABLE = 3,
  /**
   * An internal consistency check failed.
   */
  AIP_STATUS_INTERNAL = 4,
  /**
   * A value does not fit the C type of the out-parameter.
   */
  AIP_STATUS_OVERFLOW = 5,
  /**
   * A panic was caught at the boundary.
   */
  AIP_STATUS_PANIC = 6,
} AipStatus;

/**
 * A finite flat biquandle given by tables.
 */
typedef struct AipBiquandle AipBiquandle;

/**
 * A signed Gauss code.
 */
typedef struct AipCode AipCode;

/**
 * An integer Laurent polynomial.
 */
typedef struct AipPolynomial AipPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or an empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *aip_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void aip_string_free(char *s);

/**
 * Parses a signed Gauss code such as `"O1+ O2+ U1+ U2+"`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum AipStatus aip_code_parse(const char *text_ptr, struct AipCode **out);

/**
 * Releases a code. Null is ignored.
 *
 * # Safety
 * `code` must be null or a handle from this library, not yet freed.
 */
void aip_code_free(struct AipCode *code);

/**
 * Serializes a code.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_to_string(const struct AipCode *code, char **out);

/**
 * Canonical form as a new handle.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_canonicalize(const struct AipCode *code, struct AipCode **out);

/**
 * Mirror image (every crossing switched) as a new handle.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_mirror(const struct AipCode *code, struct AipCode **out);

/**
 * Orientation reversal as a new handle.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_reverse(const struct AipCode *code, struct AipCode **out);

/**
 * Sum of crossing signs.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_writhe(const struct AipCode *code, int64_t *out);

/**
 * Number of components.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_code_num_components(const struct AipCode *code, size_t *out);

/**
 * Affine Index Polynomial of a one-component code.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum AipStatus aip_polynomial(const struct AipCode *code, struct AipPolynomial **out);

/**
 * Polynomial of a link colored from per-component offsets. `offsets` holds
 * `len` values, one per component.
 *
 * # Safety
 * `code` must be a live handle, `offsets` readable for `len` values (or
 * null when `len` is 0) and `out` writable.
 */
enum AipStatus aip_link_polynomial(const struct AipCode *code,
                                   const int64_t *offsets,
                                   size_t len,
                                   struct AipPolynomial **out);

/**
 * Releases a polynomial. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void aip_polynomial_free(struct AipPolynomial *p);

/**
 * Text form, e.g. `"t^-1 - 2 + t"`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AipStatus aip_polynomial_to_string(const struct AipPolynomial *p, char **out);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AipStatus aip_polynomial_num_terms(const struct AipPolynomial *p, size_t *out);

/**
 * Term `index` in ascending exponent order.
 *
 * # Safety
 * `p` must be a live handle and both out-parameters writable.
 */
enum AipStatus aip_polynomial_term(const struct AipPolynomial *p,
                                   size_t index,
                                   int64_t *exponent,
                                   int64_t *coefficient);

/**
 * Vassiliev invariant `v_n` of a knot as a reduced fraction.
 *
 * # Safety
 * `code` must be a live handle and both out-parameters writable.
 */
enum AipStatus aip_vassiliev(const struct AipCode *code,
                             uint32_t n,
                             int64_t *numerator,
                             int64_t *denominator);

/**
 * `a * b = r a + s b + k`, `a # b = p a + q b + l` over `Z/n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AipStatus aip_biquandle_affine(size_t n,
                                    int64_t r,
                                    int64_t s,
                                    int64_t k,
                                    int64_t p,
                                    int64_t q,
                                    int64_t l,
                                    struct AipBiquandle **out);

/**
 * Reads the table file format (or a single `N r s k p q l` line).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum AipStatus aip_biquandle_parse(const char *text_ptr, struct AipBiquandle **out);

/**
 * Releases a biquandle. Null is ignored.
 *
 * # Safety
 * `b` must be null or a handle from this library, not yet freed.
 */
void aip_biquandle_free(struct AipBiquandle *b);

/**
 * Whether axioms 1-2 (`preflat`) and all three axioms (`flat`) hold.
 *
 * # Safety
 * `b` must be a live handle and both out-parameters writable.
 */
enum AipStatus aip_biquandle_check(const struct AipBiquandle *b, bool *preflat, bool *flat);

/**
 * Number of colorings of a flat code such as `"R1 R2 L1 L2"`.
 *
 * # Safety
 * `b` must be a live handle, `flat_code` a nul-terminated string and `out`
 * writable.
 */
enum AipStatus aip_biquandle_count_colorings(const struct AipBiquandle *b,
                                             const char *flat_code,
                                             size_t *out);

/**
 * Whether every resolution of a flat knot has nonzero polynomial.
 *
 * # Safety
 * `flat_code` must be a nul-terminated string and `out` writable.
 */
enum AipStatus aip_flat_certificate(const char *flat_code, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFINE_INDEX_H */
