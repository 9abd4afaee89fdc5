/* C interface to the riordan crate.
*
* All coefficients cross this boundary as decimal rational strings
* ("-5/16"), never as floating point. Strings returned through
* char** out-parameters are owned by the caller and must be released
* with riordan_string_free(); handles with riordan_array_free().
*/

#ifndef RIORDAN_H
#define RIORDAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code returned by every API function.
 */
typedef enum RiordanStatus {
  /**
   * The call succeeded and the out-parameters are populated.
   */
  RiordanStatus_Ok = 0,
  /**
   * A required pointer argument was NULL.
   */
  RiordanStatus_NullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RiordanStatus_InvalidUtf8 = 2,
  /**
   * The input was rejected: an expression failed to parse, the pair is
   * not a valid Riordan array, or an index is out of range.
   */
  RiordanStatus_InvalidInput = 3,
  /**
   * The computation failed: division by a series of higher order,
   * insufficient precision, a non-square coefficient, and similar.
   */
  RiordanStatus_MathError = 4,
  /**
   * An unexpected internal failure; please report these.
   */
  RiordanStatus_Internal = 5,
} RiordanStatus;

/**
 * Selects one power series of a pair.
 */
typedef enum RiordanComponent {
  /**
   * The first component `g`, with `g(0) != 0`.
   */
  RiordanComponent_G = 0,
  /**
   * The second component `f`, with `f(0) = 0` and `f'(0) != 0`.
   */
  RiordanComponent_F = 1,
} RiordanComponent;

/**
 * Opaque handle to a Riordan array `(g, f)` held to a fixed number of
 * exact rational coefficients.
 */
typedef struct RiordanArrayHandle RiordanArrayHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse `g` and `f` as series expressions (for example `"1/(1-x)"` and
 * `"x/(1-x)"`), evaluate both to `precision` coefficients, and return a
 * new array handle through `out`.
 */
enum RiordanStatus riordan_array_new(const char *g,
                                     const char *f,
                                     uintptr_t precision,
                                     struct RiordanArrayHandle **out);

/**
 * Release a handle returned by this library. NULL is ignored.
 */
void riordan_array_free(struct RiordanArrayHandle *array);

/**
 * The number of known coefficients of each component; 0 if `array` is NULL.
 */
uintptr_t riordan_array_precision(const struct RiordanArrayHandle *array);

/**
 * One series coefficient, as a rational string through `out`.
 */
enum RiordanStatus riordan_array_coefficient(const struct RiordanArrayHandle *array,
                                             enum RiordanComponent component,
                                             uintptr_t index,
                                             char **out);

/**
 * One triangle entry `[x^row] g f^col`, as a rational string through `out`.
 */
enum RiordanStatus riordan_array_entry(const struct RiordanArrayHandle *array,
                                       uintptr_t row,
                                       uintptr_t col,
                                       char **out);

/**
 * The first `rows` triangle rows as CSV (one row per line), through `out`.
 */
enum RiordanStatus riordan_array_expand_csv(const struct RiordanArrayHandle *array,
                                            uintptr_t rows,
                                            char **out);

/**
 * Group product `a * b = (g_a * (g_b o f_a), f_b o f_a)` through `out`.
 */
enum RiordanStatus riordan_array_multiply(const struct RiordanArrayHandle *a,
                                          const struct RiordanArrayHandle *b,
                                          struct RiordanArrayHandle **out);

/**
 * Group inverse through `out`.
 */
enum RiordanStatus riordan_array_inverse(const struct RiordanArrayHandle *array,
                                         struct RiordanArrayHandle **out);

/**
 * The vertical half, whose triangle entries are `T[2n-k][n]` of the
 * source triangle `T`, through `out`.
 */
enum RiordanStatus riordan_array_vertical_half(const struct RiordanArrayHandle *array,
                                               struct RiordanArrayHandle **out);

/**
 * The horizontal half, whose triangle entries are `T[2n][n+k]` of the
 * source triangle `T`, through `out`.
 */
enum RiordanStatus riordan_array_horizontal_half(const struct RiordanArrayHandle *array,
                                                 struct RiordanArrayHandle **out);

/**
 * The array whose vertical half is `array`; the handle's own `(g, f)` is
 * read as the target pair. The result has two fewer known coefficients.
 */
enum RiordanStatus riordan_array_vertical_antecedent(const struct RiordanArrayHandle *array,
                                                     struct RiordanArrayHandle **out);

/**
 * The array whose horizontal half is `array`. Requires the linear
 * coefficient of `f` to be a rational square; the branch with positive
 * `f'(0)` is returned.
 */
enum RiordanStatus riordan_array_horizontal_antecedent(const struct RiordanArrayHandle *array,
                                                       struct RiordanArrayHandle **out);

/**
 * Whether the array `M` satisfies `(M D)^2 = I` with `D = diag((-1)^n)`,
 * decided by two independent routes that must agree.
 */
enum RiordanStatus riordan_array_is_pseudo_involution(const struct RiordanArrayHandle *array,
                                                      bool *out);

/**
 * Hankel determinants `h_0..h_nmax` of the coefficient sequence of `g`,
 * as one CSV line through `out`. Requires `2*nmax + 1` known coefficients.
 */
enum RiordanStatus riordan_array_hankel_csv(const struct RiordanArrayHandle *array,
                                            uintptr_t nmax,
                                            char **out);

/**
 * Jacobi continued-fraction parameters of `g` at the given depth:
 * `b_0..b_{depth-1}` through `b_out` and `lambda_1..lambda_depth` through
 * `lambda_out`, each as one CSV line. Requires `g(0) = 1` and
 * `2*depth + 1` known coefficients.
 */
enum RiordanStatus riordan_array_jfraction_csv(const struct RiordanArrayHandle *array,
                                               uintptr_t depth,
                                               char **b_out,
                                               char **lambda_out);

/**
 * Release a string returned by this library. NULL is ignored.
 */
void riordan_string_free(char *text);

/**
 * The message for the most recent failure on this thread, or NULL if no
 * failure has occurred. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *riordan_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIORDAN_H */
