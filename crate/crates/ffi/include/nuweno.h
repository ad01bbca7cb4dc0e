#ifndef NUWENO_H
#define NUWENO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NuwenoFramework {
  NUWENO_FRAMEWORK_POINT_VALUES = 0,
  NUWENO_FRAMEWORK_CELL_AVERAGES = 1,
} NuwenoFramework;

typedef enum NuwenoStatus {
  NUWENO_STATUS_OK = 0,
  NUWENO_STATUS_NULL_POINTER = 1,
  NUWENO_STATUS_INVALID_ARGUMENT = 2,
  NUWENO_STATUS_SHAPE = 3,
  NUWENO_STATUS_NOT_INCREASING = 4,
  NUWENO_STATUS_LOCATION_CONSTRAINT = 5,
  NUWENO_STATUS_NON_FINITE = 6,
  NUWENO_STATUS_NO_CONVERGENCE = 7,
  NUWENO_STATUS_UNDERFLOW = 8,
  NUWENO_STATUS_PARSE = 9,
  NUWENO_STATUS_IO = 10,
  NUWENO_STATUS_PANIC = 11,
} NuwenoStatus;

/**
 * Cell interfaces of a 1D grid.
 */
typedef struct NuwenoGrid NuwenoGrid;

/**
 * Precomputed WENO reconstruction on one nonuniform stencil.
 */
typedef struct NuwenoStencil NuwenoStencil;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *nuweno_last_error(void);

/**
 * Builds a reconstruction from normalized positions `c` (nodes for point
 * values, `len = R`; cell interfaces for cell averages, `len = R + 1`) and
 * target `c_star`. `epsilon <= 0` selects the default.
 *
 * # Safety
 * `c` must point to `len` doubles and `out` to writable storage.
 */
enum NuwenoStatus nuweno_stencil_new(const double *c,
                                     size_t len,
                                     double c_star,
                                     enum NuwenoFramework framework,
                                     double epsilon,
                                     struct NuwenoStencil **out);

/**
 * Number of samples the stencil expects.
 *
 * # Safety
 * `stencil` must come from [`nuweno_stencil_new`] or be null.
 */
size_t nuweno_stencil_size(const struct NuwenoStencil *stencil);

/**
 * Number of substencils, i.e. the length of the weight arrays.
 *
 * # Safety
 * `stencil` must come from [`nuweno_stencil_new`] or be null.
 */
size_t nuweno_stencil_substencils(const struct NuwenoStencil *stencil);

/**
 * Reconstructed value from `len` samples.
 *
 * # Safety
 * Pointers must be valid; `data` holds `len` doubles.
 */
enum NuwenoStatus nuweno_stencil_reconstruct(const struct NuwenoStencil *stencil,
                                             const double *data,
                                             size_t len,
                                             double *value);

/**
 * Value plus weights: `omega` and `indicators` receive one entry per
 * substencil (`weights_len` must equal [`nuweno_stencil_substencils`]).
 * Any output pointer may be null to skip it.
 *
 * # Safety
 * Non-null pointers must be valid for the stated lengths.
 */
enum NuwenoStatus nuweno_stencil_weights(const struct NuwenoStencil *stencil,
                                         const double *data,
                                         size_t len,
                                         double *value,
                                         double *omega_global,
                                         double *omega,
                                         double *indicators,
                                         size_t weights_len);

/**
 * # Safety
 * `stencil` must come from [`nuweno_stencil_new`] or be null; it must not
 * be used afterwards.
 */
void nuweno_stencil_free(struct NuwenoStencil *stencil);

/**
 * `n` equal cells on `[a, b]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum NuwenoStatus nuweno_grid_uniform(double a, double b, size_t n, struct NuwenoGrid **out);

/**
 * Randomly perturbed grid of `n` cells on `[-1, 1]` from the default
 * Wichmann-Hill seeds; `centered != 0` perturbs symmetrically.
 *
 * # Safety
 * `out` must be writable.
 */
enum NuwenoStatus nuweno_grid_perturbed(size_t n,
                                        double xi,
                                        int32_t centered,
                                        struct NuwenoGrid **out);

/**
 * Number of cells.
 *
 * # Safety
 * `grid` must come from a grid constructor or be null.
 */
size_t nuweno_grid_cells(const struct NuwenoGrid *grid);

/**
 * Copies the `cells + 1` interfaces into `out`.
 *
 * # Safety
 * `out` must hold `len` doubles.
 */
enum NuwenoStatus nuweno_grid_interfaces(const struct NuwenoGrid *grid, double *out, size_t len);

/**
 * # Safety
 * `grid` must come from a grid constructor or be null; it must not be
 * used afterwards.
 */
void nuweno_grid_free(struct NuwenoGrid *grid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUWENO_H */
