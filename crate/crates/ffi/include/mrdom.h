#ifndef MRDOM_H
#define MRDOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum MrStatus {
  MR_STATUS_OK = 0,
  MR_STATUS_NULL_POINTER = 1,
  /**
   * Text that is not UTF-8, or a malformed spec, edge list or label.
   */
  MR_STATUS_PARSE = 2,
  /**
   * Parameters outside a family's or operation's domain.
   */
  MR_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Graph too large for the requested exact method.
   */
  MR_STATUS_CAP_EXCEEDED = 4,
  MR_STATUS_IO = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  MR_STATUS_INTERNAL = 6,
} MrStatus;

/**
 * Opaque graph handle.
 */
typedef struct MrGraph MrGraph;

/**
 * Opaque solver result handle.
 */
typedef struct MrSolution MrSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *mr_last_error(void);

/**
 * Generates a graph from a spec string such as `wheel(8)` or
 * `corona(complete(3),cycle(4))`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum MrStatus mr_graph_from_spec(const char *spec, struct MrGraph **out);

/**
 * Parses an edge list (`n m` header, then `u v` lines).
 *
 * # Safety
 * `edge_list` must be a NUL-terminated string; `out` must be writable.
 */
enum MrStatus mr_graph_from_edge_list(const char *edge_list, struct MrGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that was not freed.
 */
void mr_graph_free(struct MrGraph *g);

/**
 * Vertex count; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t mr_graph_order(const struct MrGraph *g);

/**
 * Edge count; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t mr_graph_edge_count(const struct MrGraph *g);

/**
 * Canonical edge list; release with [`mr_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum MrStatus mr_graph_to_edge_list(const struct MrGraph *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void mr_string_free(char *s);

/**
 * Checks a labeling of `len` values against the graph.
 *
 * # Safety
 * `labels` must point to `len` readable values; `is_valid` and `weight`
 * must be writable.
 */
enum MrStatus mr_validate(const struct MrGraph *g,
                          const int8_t *labels,
                          size_t len,
                          bool *is_valid,
                          int64_t *weight);

/**
 * Exact optimum by branch and bound on `threads` workers (at least 1).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum MrStatus mr_solve(const struct MrGraph *g, uint32_t threads, struct MrSolution **out);

/**
 * # Safety
 * `s` must be a live solution handle.
 */
int64_t mr_solution_optimum(const struct MrSolution *s);

/**
 * # Safety
 * `s` must be a live solution handle.
 */
bool mr_solution_proven(const struct MrSolution *s);

/**
 * Copies up to `cap` witness labels into `buf` and returns the full
 * witness length; call with `cap = 0` to query the size.
 *
 * # Safety
 * `s` must be a live solution handle; `buf` must have room for `cap`
 * values.
 */
size_t mr_solution_witness(const struct MrSolution *s, int8_t *buf, size_t cap);

/**
 * # Safety
 * `s` must be null or a solution handle that was not freed.
 */
void mr_solution_free(struct MrSolution *s);

/**
 * Closed-form exact value for a spec. `*has_value` is false when no
 * exact formula applies.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; outputs must be writable.
 */
enum MrStatus mr_predicted_exact(const char *spec, bool *has_value, int64_t *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MRDOM_H */
