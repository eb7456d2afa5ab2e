#ifndef ELLWEYL_H
#define ELLWEYL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EllweylStatus {
  ELLWEYL_STATUS_OK = 0,
  ELLWEYL_STATUS_NULL_POINTER = 1,
  ELLWEYL_STATUS_INVALID_ARGUMENT = 2,
  ELLWEYL_STATUS_NOT_ROOT = 3,
  ELLWEYL_STATUS_JSON = 4,
  ELLWEYL_STATUS_PANIC = 5,
} EllweylStatus;

typedef enum EllweylKind {
  ELLWEYL_KIND_D4 = 0,
  ELLWEYL_KIND_E6 = 1,
  ELLWEYL_KIND_E7 = 2,
  ELLWEYL_KIND_E8 = 3,
} EllweylKind;

// A finished Hurwitz orbit census.
typedef struct EllweylCensus EllweylCensus;

// An element of the hyperbolic cover in normal form.
typedef struct EllweylTriple EllweylTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL.
//
// The pointer stays valid until the next failing call on the same thread.
const char *ellweyl_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void ellweyl_string_free(char *s);

// Number of roots of the finite root system.
//
// # Safety
// `out` must be valid for writes.
enum EllweylStatus ellweyl_root_count(enum EllweylKind kind, size_t *out);

struct EllweylTriple *ellweyl_triple_identity(enum EllweylKind kind);

struct EllweylTriple *ellweyl_triple_coxeter(enum EllweylKind kind);

struct EllweylTriple *ellweyl_triple_central(enum EllweylKind kind);

// Reflection in `beta + k a + l b`, with `beta` in simple-root coordinates.
//
// # Safety
// `beta` must point to `len` readable values; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_reflection(enum EllweylKind kind,
                                             const int64_t *beta,
                                             size_t len,
                                             int64_t k,
                                             int64_t l,
                                             struct EllweylTriple **out);

// # Safety
// `a`, `b` must be live handles; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_mul(const struct EllweylTriple *a,
                                      const struct EllweylTriple *b,
                                      struct EllweylTriple **out);

// # Safety
// `a` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_inverse(const struct EllweylTriple *a,
                                          struct EllweylTriple **out);

// False if either pointer is NULL.
//
// # Safety
// Non-null arguments must be live handles.
bool ellweyl_triple_equal(const struct EllweylTriple *a, const struct EllweylTriple *b);

// # Safety
// `a` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_is_identity(const struct EllweylTriple *a, bool *out);

// Scherk length of the element, computed on its lift.
//
// # Safety
// `a` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_scherk_length(const struct EllweylTriple *a, size_t *out);

// JSON form `{kind, w_fin, lambda, mu}`; free with [`ellweyl_string_free`].
//
// # Safety
// `a` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_to_json(const struct EllweylTriple *a, char **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writes.
enum EllweylStatus ellweyl_triple_from_json(const char *json, struct EllweylTriple **out);

// # Safety
// `a` must come from this library and not have been freed.
void ellweyl_triple_free(struct EllweylTriple *a);

// Census of the orbit of the standard factorization. A census that hit
// `max_states` is still returned; check [`ellweyl_census_is_complete`].
//
// # Safety
// `out` must be valid for writes.
enum EllweylStatus ellweyl_census_explore(enum EllweylKind kind,
                                          int64_t coeff_bound,
                                          size_t max_states,
                                          struct EllweylCensus **out);

// Number of stored states, or 0 for NULL.
//
// # Safety
// Non-null `c` must be a live handle.
size_t ellweyl_census_len(const struct EllweylCensus *c);

// # Safety
// Non-null `c` must be a live handle.
uint64_t ellweyl_census_truncations(const struct EllweylCensus *c);

// # Safety
// Non-null `c` must be a live handle.
bool ellweyl_census_is_complete(const struct EllweylCensus *c);

// Summary as JSON; free with [`ellweyl_string_free`].
//
// # Safety
// `c` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_census_summary_json(const struct EllweylCensus *c, char **out);

// Product of the seed factorization, as a new handle.
//
// # Safety
// `c` must be a live handle; `out` must be valid for writes.
enum EllweylStatus ellweyl_census_product(const struct EllweylCensus *c,
                                          struct EllweylTriple **out);

// # Safety
// `c` must come from this library and not have been freed.
void ellweyl_census_free(struct EllweylCensus *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELLWEYL_H */
