#ifndef COGMAP_H
#define COGMAP_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CogmapStatus {
  COGMAP_STATUS_OK = 0,
  COGMAP_STATUS_NULL_POINTER = 1,
  COGMAP_STATUS_INVALID_ARGUMENT = 2,
  COGMAP_STATUS_VALIDATION = 3,
  COGMAP_STATUS_NUMERICAL = 4,
  COGMAP_STATUS_NOT_APPLICABLE = 5,
  COGMAP_STATUS_PANIC = 6,
} CogmapStatus;

/**
 * Opaque cognitive map.
 */
typedef struct CogmapMap CogmapMap;

/**
 * Opaque n x n influence matrix.
 */
typedef struct CogmapMatrix CogmapMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library from the same thread.
 */
const char *cogmap_last_error_message(void);

const char *cogmap_version(void);

/**
 * Builds a map from `n * n` row-major weights.
 *
 * # Safety
 * `weights` must point to `n * n` readable doubles and `out` to writable
 * storage for one handle.
 */
enum CogmapStatus cogmap_map_from_weights(size_t n, const double *weights, struct CogmapMap **out);

/**
 * Loads a map from a CSV or JSON file (JSON when the name ends in `.json`).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum CogmapStatus cogmap_map_load(const char *path, struct CogmapMap **out);

/**
 * # Safety
 * `map` must be NULL or a handle from this library not yet freed.
 */
void cogmap_map_free(struct CogmapMap *map);

/**
 * Number of vertices, 0 for NULL.
 *
 * # Safety
 * `map` must be NULL or a live handle.
 */
size_t cogmap_map_size(const struct CogmapMap *map);

/**
 * Accumulated influence matrix. `threads` 0 or 1 runs sequentially;
 * `max_paths` 0 selects the default per-pair budget.
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum CogmapStatus cogmap_influence_matrix(const struct CogmapMap *map,
                                          size_t threads,
                                          size_t max_paths,
                                          struct CogmapMatrix **out);

/**
 * # Safety
 * `matrix` must be NULL or a live handle.
 */
void cogmap_matrix_free(struct CogmapMatrix *matrix);

/**
 * # Safety
 * `matrix` must be NULL or a live handle.
 */
size_t cogmap_matrix_size(const struct CogmapMatrix *matrix);

/**
 * # Safety
 * `matrix` must be a live handle and `out` writable.
 */
enum CogmapStatus cogmap_matrix_get(const struct CogmapMatrix *matrix,
                                    size_t i,
                                    size_t j,
                                    double *out);

/**
 * Copies the matrix row-major into `buf`, which must hold `len >= n * n`
 * doubles.
 *
 * # Safety
 * `matrix` must be a live handle and `buf` writable for `len` doubles.
 */
enum CogmapStatus cogmap_matrix_copy(const struct CogmapMatrix *matrix, double *buf, size_t len);

/**
 * Row sums of `|z_ij|` into `scores` and the descending ranking (0-based
 * vertex indices, ties by index) into `ranking`; both hold `len >= n`.
 *
 * # Safety
 * `matrix` must be a live handle; `scores` and `ranking` writable for `len`
 * elements.
 */
enum CogmapStatus cogmap_general_influence(const struct CogmapMatrix *matrix,
                                           double *scores,
                                           size_t *ranking,
                                           size_t len);

/**
 * Impulse-stability verdict and spectral radius of the weight matrix.
 *
 * # Safety
 * `map` must be a live handle; `stable` and `spectral_radius` writable or
 * NULL.
 */
enum CogmapStatus cogmap_stability(const struct CogmapMap *map,
                                   bool *stable,
                                   double *spectral_radius);

/**
 * Impulse-method scores and ranking. `eps <= 0` and `max_steps == 0`
 * select the defaults. Returns `COGMAP_STATUS_NOT_APPLICABLE` for an
 * unstable map.
 *
 * # Safety
 * As for [`cogmap_general_influence`], with `map` a live handle.
 */
enum CogmapStatus cogmap_impulse_scores(const struct CogmapMap *map,
                                        double eps,
                                        size_t max_steps,
                                        double *scores,
                                        size_t *ranking,
                                        size_t len);

/**
 * Kosko total influence `from -> to`. `has_path` is set false (and `total`
 * left untouched) when no path exists.
 *
 * # Safety
 * `map` must be a live handle; `total` and `has_path` writable.
 */
enum CogmapStatus cogmap_kosko_total(const struct CogmapMap *map,
                                     size_t from,
                                     size_t to,
                                     bool abs_weights,
                                     double *total,
                                     bool *has_path);

/**
 * Number of simple paths `from -> to`, bounded by `max_paths` (0 for the
 * default).
 *
 * # Safety
 * `map` must be a live handle and `out` writable.
 */
enum CogmapStatus cogmap_path_count(const struct CogmapMap *map,
                                    size_t from,
                                    size_t to,
                                    size_t max_paths,
                                    size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COGMAP_H */
