#ifndef SUMPERFECT_H
#define SUMPERFECT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_VERTEX = 2,
  SP_STATUS_LOOP = 3,
  /**
   * More vertices than the library (or the requested operation) supports.
   */
  SP_STATUS_CAPACITY = 4,
  SP_STATUS_PARSE = 5,
  /**
   * The operation's exhaustive search is limited to smaller graphs.
   */
  SP_STATUS_ENVELOPE = 6,
  SP_STATUS_INVALID_UTF8 = 7,
  SP_STATUS_PANIC = 8,
} SpStatus;

/**
 * Opaque graph handle.
 */
typedef struct SpGraph SpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *sp_status_message(enum SpStatus status);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values (it may be null when
 * `edge_count` is 0); `out` must be valid for writes.
 */
enum SpStatus sp_graph_from_edges(size_t n,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct SpGraph **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum SpStatus sp_graph_from_graph6(const char *text, struct SpGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void sp_graph_free(struct SpGraph *g);

/**
 * graph6 encoding; release the string with [`sp_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_graph_to_graph6(const struct SpGraph *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void sp_string_free(char *s);

/**
 * Number of vertices.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_graph_order(const struct SpGraph *g, size_t *out);

/**
 * Stability number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_alpha(const struct SpGraph *g, size_t *out);

/**
 * Clique number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_omega(const struct SpGraph *g, size_t *out);

/**
 * Matching number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_matching_number(const struct SpGraph *g, size_t *out);

/**
 * Number of triangles.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_triangles(const struct SpGraph *g, size_t *out);

/**
 * `n - alpha - omega`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_deficit(const struct SpGraph *g, int64_t *out);

/**
 * Whether the graph is threshold.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_is_threshold(const struct SpGraph *g, bool *out);

/**
 * Whether the vertices split into a clique and a stable set.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_is_split(const struct SpGraph *g, bool *out);

/**
 * Largest deficit over non-empty induced subgraphs; graphs above 20
 * vertices give `SP_STATUS_ENVELOPE`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpStatus sp_max_deficiency(const struct SpGraph *g, int64_t *out);

/**
 * Sum-perfect verdict. When the graph is not sum-perfect,
 * `forbidden_index` receives `i` for the induced `H_i` found, otherwise 0.
 * `forbidden_index` may be null.
 *
 * # Safety
 * `g` must be a live handle; `verdict` must be valid for writes;
 * `forbidden_index` must be null or valid for writes.
 */
enum SpStatus sp_is_sum_perfect(const struct SpGraph *g, bool *verdict, size_t *forbidden_index);

/**
 * A new handle holding `H_index` of the forbidden family, `1 <= index <= 27`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SpStatus sp_family_member(size_t index, struct SpGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUMPERFECT_H */
