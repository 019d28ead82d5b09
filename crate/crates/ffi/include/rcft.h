#ifndef RCFT_H
#define RCFT_H

#include <stddef.h>
#include <stdint.h>

typedef enum RcftStatus {
  RCFT_STATUS_OK = 0,
  // The computation finished and the property does not hold.
  RCFT_STATUS_FAIL = 1,
  RCFT_STATUS_NULL_POINTER = 2,
  RCFT_STATUS_INVALID_UTF8 = 3,
  RCFT_STATUS_PARSE = 4,
  RCFT_STATUS_PRECONDITION = 5,
  RCFT_STATUS_ARITHMETIC = 6,
  RCFT_STATUS_OUT_OF_RANGE = 7,
  RCFT_STATUS_PANIC = 8,
} RcftStatus;

// Opaque modular data handle.
typedef struct RcftModularData RcftModularData;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last error on this thread, or NULL. Valid until the next call.
const char *rcft_last_error(void);

// Parse a document in the text container format.
//
// # Safety
// `text` must be a NUL-terminated string and `dst` a valid pointer.
enum RcftStatus rcft_parse(const char *text, struct RcftModularData **dst);

// Lattice data for √n Z, n even.
//
// # Safety
// `dst` must be a valid pointer.
enum RcftStatus rcft_gen_lattice(uint32_t n, struct RcftModularData **dst);

// Affine data; `algebra` is "a1" or "a2".
//
// # Safety
// `algebra` must be a NUL-terminated string and `dst` a valid pointer.
enum RcftStatus rcft_gen_affine(const char *algebra, uint32_t level, struct RcftModularData **dst);

// Quantum double of a built-in group: "z<n>", "s3", "d4" or "q8".
//
// # Safety
// `group` must be a NUL-terminated string and `dst` a valid pointer.
enum RcftStatus rcft_gen_double(const char *group, struct RcftModularData **dst);

// Release a handle. NULL is ignored.
//
// # Safety
// `md` must come from this library and not be freed twice.
void rcft_free(struct RcftModularData *md);

// Number of primaries.
//
// # Safety
// Pointers must be valid.
enum RcftStatus rcft_size(const struct RcftModularData *md, size_t *dst);

// Order N of T.
//
// # Safety
// Pointers must be valid.
enum RcftStatus rcft_t_order(const struct RcftModularData *md, uint64_t *dst);

// `RCFT_STATUS_OK` when every modular-data axiom holds, `RCFT_STATUS_FAIL` otherwise.
//
// # Safety
// `md` must be a valid handle.
enum RcftStatus rcft_validate(const struct RcftModularData *md);

// The congruence test on (S, T).
//
// # Safety
// `md` must be a valid handle.
enum RcftStatus rcft_theorem2(const struct RcftModularData *md);

// The container-format text. Free the result with [`rcft_string_free`].
//
// # Safety
// Pointers must be valid.
enum RcftStatus rcft_serialize(const struct RcftModularData *md, char **dst);

// Release a string returned by the library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rcft_string_free(char *s);

// The Verlinde coefficient N_ab^c.
//
// # Safety
// Pointers must be valid.
enum RcftStatus rcft_fusion(const struct RcftModularData *md,
                            size_t a,
                            size_t b,
                            size_t c,
                            uint64_t *dst);

// Galois permutation and signs for ℓ. `perm` and `signs` must each hold `len` ≥ size entries.
//
// # Safety
// `perm` and `signs` must point to `len` writable elements.
enum RcftStatus rcft_galois(const struct RcftModularData *md,
                            int64_t ell,
                            size_t *perm,
                            int8_t *signs,
                            size_t len);

// |SL₂(Z/n)| by enumeration, stopping past `cap` elements.
//
// # Safety
// `dst` must be a valid pointer.
enum RcftStatus rcft_sl2_group_order(uint64_t n, uint64_t cap, uint64_t *dst);

// The 2-adic valuation of p/q.
//
// # Safety
// `dst` must be a valid pointer.
enum RcftStatus rcft_two_ness(int64_t p, int64_t q, int64_t *dst);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RCFT_H */
