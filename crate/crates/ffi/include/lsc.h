#ifndef LSC_H
#define LSC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LscStatus {
  LSC_STATUS_OK = 0,
  LSC_STATUS_NULL_ARGUMENT = 1,
  LSC_STATUS_PARSE_ERROR = 2,
  LSC_STATUS_INVALID_INSTANCE = 3,
  LSC_STATUS_INFEASIBLE = 4,
  LSC_STATUS_NO_SOLUTION = 5,
  LSC_STATUS_INVALID_ARGUMENT = 6,
  LSC_STATUS_BUFFER_TOO_SMALL = 7,
  LSC_STATUS_PANIC = 8,
} LscStatus;

typedef enum LscSolver {
  LSC_SOLVER_EXACT = 0,
  LSC_SOLVER_GREEDY = 1,
  LSC_SOLVER_LOCAL = 2,
  LSC_SOLVER_FPT = 3,
} LscSolver;

typedef enum LscTarget {
  LSC_TARGET_ALL = 0,
  LSC_TARGET_BOUNDED = 1,
  LSC_TARGET_RECTANGULAR = 2,
} LscTarget;

// The planar subdivision of an instance.
typedef struct LscArrangement LscArrangement;

// A validated segment set.
typedef struct LscInstance LscInstance;

// A solver run: chosen segment ids and the text report.
typedef struct LscSolution LscSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *lsc_version(void);

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on this thread.
const char *lsc_last_error(void);

// Parses an `LSC 1` instance from NUL-terminated text.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum LscStatus lsc_instance_parse(const char *text, struct LscInstance **out);

// Builds an instance from `4 * count` integers `x1 y1 x2 y2 ...`.
//
// # Safety
// `coords` must point to `4 * count` readable values and `out` be valid.
enum LscStatus lsc_instance_from_coords(const int64_t *coords,
                                        size_t count,
                                        struct LscInstance **out);

// Number of segments; 0 for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t lsc_instance_len(const struct LscInstance *inst);

// # Safety
// `inst` must be null or a handle not yet freed.
void lsc_instance_free(struct LscInstance *inst);

// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum LscStatus lsc_arrangement_build(const struct LscInstance *inst, struct LscArrangement **out);

// Number of cells, the unbounded one included; 0 for a null handle.
//
// # Safety
// `arr` must be null or a live handle.
size_t lsc_arrangement_cell_count(const struct LscArrangement *arr);

// Writes whether `cell` is bounded and whether it is rectangular.
//
// # Safety
// `arr` must be a live handle; the out pointers must be valid.
enum LscStatus lsc_arrangement_cell_kind(const struct LscArrangement *arr,
                                         size_t cell,
                                         bool *bounded,
                                         bool *rectangular);

// Copies the ids of the segments covering `cell` into `buf` (ascending).
// `*len` receives the count even when `cap` is too small.
//
// # Safety
// `arr` must be a live handle, `buf` writable for `cap` values, `len` valid.
enum LscStatus lsc_arrangement_covered_by(const struct LscArrangement *arr,
                                          size_t cell,
                                          size_t *buf,
                                          size_t cap,
                                          size_t *len);

// # Safety
// `arr` must be null or a handle not yet freed.
void lsc_arrangement_free(struct LscArrangement *arr);

// Solves the covering problem on `arr`.
//
// `allowed` is null for all segments or an orientation filter such as
// `"orient:h"`. `k` is the budget (exact, fpt) or swap radius (local); pass
// a negative value for none. A run that proves no cover of size at most `k`
// exists returns `LSC_STATUS_NO_SOLUTION` and no handle.
//
// # Safety
// `arr` must be a live handle, `allowed` null or a C string, `out` valid.
enum LscStatus lsc_solve(const struct LscArrangement *arr,
                         enum LscSolver solver,
                         enum LscTarget target,
                         const char *allowed,
                         int64_t k,
                         uint64_t seed,
                         struct LscSolution **out);

// Number of chosen segments; 0 for a null handle.
//
// # Safety
// `sol` must be null or a live handle.
size_t lsc_solution_size(const struct LscSolution *sol);

// Copies the chosen ids (ascending) into `buf`; see
// [`lsc_arrangement_covered_by`] for the buffer protocol.
//
// # Safety
// `sol` must be a live handle, `buf` writable for `cap` values, `len` valid.
enum LscStatus lsc_solution_ids(const struct LscSolution *sol,
                                size_t *buf,
                                size_t cap,
                                size_t *len);

// The run report without timing, owned by the solution handle.
//
// # Safety
// `sol` must be null or a live handle.
const char *lsc_solution_report(const struct LscSolution *sol);

// # Safety
// `sol` must be null or a handle not yet freed.
void lsc_solution_free(struct LscSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LSC_H */
