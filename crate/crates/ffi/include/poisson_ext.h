#ifndef POISSON_EXT_H
#define POISSON_EXT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PxStatus {
  /**
   * Success, or a check that came out true.
   */
  PX_OK = 0,
  /**
   * A check that came out false: axioms violated, not cohomologous.
   */
  PX_FALSE = 1,
  PX_NULL_POINTER = 2,
  PX_INVALID_UTF8 = 3,
  PX_PARSE_ERROR = 4,
  PX_INVALID_INPUT = 5,
  PX_UNDECIDABLE = 6,
  PX_TOO_LARGE = 7,
  PX_PANIC = 8,
} PxStatus;

/**
 * A Poisson algebra.
 */
typedef struct PxAlgebra PxAlgebra;

/**
 * The outcome of a classification.
 */
typedef struct PxClassification PxClassification;

/**
 * A pre-crossed datum.
 */
typedef struct PxSystem PxSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *px_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void px_string_free(char *s);

/**
 * Parses an algebra file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum PxStatus px_algebra_parse(const char *text, struct PxAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void px_algebra_free(struct PxAlgebra *a);

/**
 * Dimension of the algebra, 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uintptr_t px_algebra_dim(const struct PxAlgebra *a);

/**
 * The algebra in file format; free with [`px_string_free`].
 *
 * # Safety
 * `a` must be null or a live handle.
 */
char *px_algebra_emit(const struct PxAlgebra *a);

/**
 * `PX_OK` when the Poisson identities hold, `PX_FALSE` otherwise.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
enum PxStatus px_algebra_verify(const struct PxAlgebra *a);

/**
 * Parses a crossed-system file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for writes.
 */
enum PxStatus px_system_parse(const char *text, struct PxSystem **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void px_system_free(struct PxSystem *s);

/**
 * The crossed system in file format; free with [`px_string_free`].
 *
 * # Safety
 * `s` must be null or a live handle.
 */
char *px_system_emit(const struct PxSystem *s);

/**
 * `PX_OK` when the crossed-system axioms hold, `PX_FALSE` otherwise.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
enum PxStatus px_system_check(const struct PxSystem *s);

/**
 * The crossed product of a crossed system.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
enum PxStatus px_system_product(const struct PxSystem *s, struct PxAlgebra **out);

/**
 * Decides whether two crossed systems are cohomologous. On `PX_OK`, when
 * `witness` is not null it receives the map `r` in matrix file format.
 *
 * # Safety
 * `a` and `b` must be live handles; `witness` must be null or valid for
 * writes.
 */
enum PxStatus px_system_equivalent(const struct PxSystem *a,
                                   const struct PxSystem *b,
                                   char **witness);

/**
 * Classifies one-dimensional extensions of `a` over the prime field of
 * order `p`. A rational algebra is reduced modulo `p` first.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum PxStatus px_classify_coflag(const struct PxAlgebra *a,
                                 uint32_t p,
                                 struct PxClassification **out);

/**
 * Classifies extensions of the abelian algebra of dimension `dim_p` by
 * the abelian algebra of dimension `dim_v` over the prime field of order
 * `p`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PxStatus px_classify_metabelian(uintptr_t dim_p,
                                     uintptr_t dim_v,
                                     uint32_t p,
                                     struct PxClassification **out);

/**
 * Number of classes, 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
uintptr_t px_classification_total(const struct PxClassification *c);

/**
 * The classification report; free with [`px_string_free`].
 *
 * # Safety
 * `c` must be null or a live handle.
 */
char *px_classification_emit(const struct PxClassification *c);

/**
 * # Safety
 * `c` must be null or a handle from this library, not yet freed.
 */
void px_classification_free(struct PxClassification *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_EXT_H */
