#ifndef PDERIV_H
#define PDERIV_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Mirrors the CLI exit codes.
 */
typedef enum PdStatus {
  PD_STATUS_OK = 0,
  PD_STATUS_INTERNAL = 1,
  PD_STATUS_INVALID_INPUT = 2,
  PD_STATUS_TOO_LARGE = 3,
  PD_STATUS_VERIFICATION_FAILED = 4,
} PdStatus;

typedef enum PdOrbitClass {
  PD_ORBIT_CLASS_ZERO = 0,
  PD_ORBIT_CLASS_FIXED_POINT = 1,
  PD_ORBIT_CLASS_DIVERGES_POSITIVE = 2,
  PD_ORBIT_CLASS_DIVERGES_NEGATIVE = 3,
} PdOrbitClass;

/*
 Opaque set of integral anti-partial derivatives.
 */
typedef struct PdAntiSet PdAntiSet;

/*
 Opaque result of a prescribed-count construction.
 */
typedef struct PdConstruction PdConstruction;

/*
 Opaque increment profile.
 */
typedef struct PdIncProfile PdIncProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next `pd_*` call on the same thread.
 */
const char *pd_last_error_message(void);

/*
 Library version, statically allocated.
 */
const char *pd_version(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void pd_string_free(char *s);

/*
 Sets the size guard, in bits, for materialized integers (process-wide).
 */
void pd_set_max_bits(uint64_t bits);

/*
 `D_p(x)`. The result is a decimal, or a standard form when it is too
 large to print.

 # Safety
 `x` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_dp(uint64_t p, const char *x, char **out);

/*
 The full arithmetic derivative `D(x)`.

 # Safety
 `x` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_d_full(const char *x, char **out);

/*
 `ord_p(x)` as a decimal, or `"inf"` for zero.

 # Safety
 `x` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_ord(uint64_t p, const char *x, char **out);

/*
 # Safety
 `x` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_period(uint64_t p, const char *x, uint64_t *out);

/*
 # Safety
 `x` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_classify(uint64_t p, const char *x, enum PdOrbitClass *out);

/*
 `ℓ` for the run lengths `runs[0..len]`, as a decimal.

 # Safety
 `runs` must point to `len` readable values; `out` must be writable.
 */
enum PdStatus pd_reverse_construct(uint64_t p, const uint64_t *runs, size_t len, char **out);

/*
 # Safety
 `y` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_count_anti(uint64_t p, const char *y, size_t *out);

/*
 # Safety
 `y` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_count_anti_rational(uint64_t p, const char *y, size_t *out);

/*
 # Safety
 `ell` must be a valid C string (a natural number ≥ p); `out` must be writable.
 */
enum PdStatus pd_inc_profile_new(uint64_t p, const char *ell, struct PdIncProfile **out);

/*
 # Safety
 `h` must be NULL or a live handle.
 */
void pd_inc_profile_free(struct PdIncProfile *h);

/*
 # Safety
 `h` must be a live handle.
 */
uint64_t pd_inc_profile_period(const struct PdIncProfile *h);

/*
 # Safety
 `h` must be a live handle.
 */
uint64_t pd_inc_profile_prefix_len(const struct PdIncProfile *h);

/*
 # Safety
 `h` must be a live handle.
 */
size_t pd_inc_profile_segment_count(const struct PdIncProfile *h);

/*
 Segment `index`: its `k`, head term `k − 1` and number of `−1`s.

 # Safety
 `h` must be a live handle; the out pointers must be writable.
 */
enum PdStatus pd_inc_profile_segment(const struct PdIncProfile *h,
                                     size_t index,
                                     uint64_t *k,
                                     int64_t *head,
                                     uint64_t *run_len);

/*
 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_inc_profile_to_json(const struct PdIncProfile *h, char **out);

/*
 # Safety
 `y` must be a valid C string; `out` must be writable.
 */
enum PdStatus pd_anti_set_new(uint64_t p, const char *y, struct PdAntiSet **out);

/*
 # Safety
 `h` must be NULL or a live handle.
 */
void pd_anti_set_free(struct PdAntiSet *h);

/*
 # Safety
 `h` must be a live handle.
 */
size_t pd_anti_set_count(const struct PdAntiSet *h);

/*
 Member `index` (ascending `k`) in standard form `a*p^(b*p^k)`.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_anti_set_member(const struct PdAntiSet *h, size_t index, char **out);

/*
 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_anti_set_to_json(const struct PdAntiSet *h, char **out);

/*
 `x0` whose image has exactly `n` anti-partial derivatives, verified.

 # Safety
 `out` must be writable.
 */
enum PdStatus pd_construct(uint64_t p, uint64_t n, uint64_t k0, struct PdConstruction **out);

/*
 # Safety
 `h` must be NULL or a live handle.
 */
void pd_construction_free(struct PdConstruction *h);

/*
 # Safety
 `h` must be a live handle.
 */
size_t pd_construction_count(const struct PdConstruction *h);

/*
 `x0` in standard form.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_construction_x0(const struct PdConstruction *h, char **out);

/*
 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_construction_to_json(const struct PdConstruction *h, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PDERIV_H */
