#ifndef RAINBOW_SATURATION_H
#define RAINBOW_SATURATION_H

#pragma once

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RsStatus {
  RS_STATUS_OK = 0,
  RS_STATUS_NULL_POINTER = 1,
  RS_STATUS_INVALID_UTF8 = 2,
  RS_STATUS_INVALID_INPUT = 3,
  RS_STATUS_TOO_LARGE = 4,
  RS_STATUS_PANIC = 5,
} RsStatus;

typedef enum RsTri {
  RS_TRI_FALSE = 0,
  RS_TRI_TRUE = 1,
  RS_TRI_UNKNOWN = 2,
} RsTri;

/**
 * Outcome of a search.
 */
typedef enum RsVerdict {
  RS_VERDICT_FEASIBLE = 0,
  RS_VERDICT_INFEASIBLE = 1,
  RS_VERDICT_UNKNOWN = 2,
} RsVerdict;

/**
 * Opaque coloring handle.
 */
typedef struct RsColoring RsColoring;

/**
 * Opaque graph handle.
 */
typedef struct RsGraph RsGraph;

/**
 * Search limits; zero means unlimited.
 */
typedef struct RsBudget {
  uint64_t max_nodes;
  uint64_t max_millis;
} RsBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *rs_last_error(void);

/**
 * Parses a graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RsStatus rs_graph_from_graph6(const char *text, struct RsGraph **out);

/**
 * Builds a graph from `edge_count` vertex pairs laid out as
 * `u0, v0, u1, v1, ...`.
 *
 * # Safety
 * `pairs` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is zero) and `out` must be valid.
 */
enum RsStatus rs_graph_from_edges(size_t n,
                                  const uint32_t *pairs,
                                  size_t edge_count,
                                  struct RsGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void rs_graph_free(struct RsGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null.
 */
size_t rs_graph_vertex_count(const struct RsGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null.
 */
size_t rs_graph_edge_count(const struct RsGraph *g);

/**
 * Endpoints of edge `index` in canonical order.
 *
 * # Safety
 * `g` must be live; `u` and `v` valid.
 */
enum RsStatus rs_graph_edge(const struct RsGraph *g, size_t index, size_t *u, size_t *v);

/**
 * graph6 encoding; free with [`rs_string_free`].
 *
 * # Safety
 * `g` must be live and `out` valid.
 */
enum RsStatus rs_graph_to_graph6(const struct RsGraph *g, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void rs_string_free(char *s);

/**
 * Builds the construction for `C_k` (`k` in 4, 5, 6) on `n` vertices,
 * returning the graph and its witness coloring. `coloring` may be null.
 *
 * # Safety
 * `graph` must be valid; `coloring` valid or null.
 */
enum RsStatus rs_construction_build(size_t k,
                                    size_t n,
                                    struct RsGraph **graph,
                                    struct RsColoring **coloring);

/**
 * Builds a named fixture: `core`, `core+T1`, `H` or `F`.
 *
 * # Safety
 * `name` must be NUL-terminated; `graph` valid; `coloring` valid or null.
 */
enum RsStatus rs_fixture_build(const char *name,
                               struct RsGraph **graph,
                               struct RsColoring **coloring);

/**
 * A coloring from one color per edge in canonical edge order.
 *
 * # Safety
 * `colors` must point to `len` values (or be null when `len` is zero);
 * `out` must be valid.
 */
enum RsStatus rs_coloring_new(const uint16_t *colors, size_t len, struct RsColoring **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void rs_coloring_free(struct RsColoring *c);

/**
 * # Safety
 * `c` must be live or null.
 */
size_t rs_coloring_len(const struct RsColoring *c);

/**
 * Copies up to `cap` colors into `buf`; returns the number copied.
 *
 * # Safety
 * `c` must be live; `buf` must have room for `cap` values.
 */
size_t rs_coloring_copy(const struct RsColoring *c, uint16_t *buf, size_t cap);

/**
 * Whether `c` is a proper coloring of `g` without a rainbow `C_k`.
 *
 * # Safety
 * Handles must be live; `out` valid.
 */
enum RsStatus rs_verify_coloring(const struct RsGraph *g,
                                 const struct RsColoring *c,
                                 size_t k,
                                 bool *out);

/**
 * Searches for a proper coloring without a rainbow `C_k`. With `colors`
 * zero the palette is `|E|`; otherwise exactly `colors` colors must all be
 * used. A witness is stored in `witness` (when non-null) on success.
 *
 * # Safety
 * `g` must be live; `verdict` valid; `witness` valid or null.
 */
enum RsStatus rs_find_coloring(const struct RsGraph *g,
                               size_t k,
                               size_t colors,
                               struct RsBudget budget,
                               enum RsVerdict *verdict,
                               struct RsColoring **witness);

/**
 * Rainbow `C_k`-saturation of `g`; the budget applies per search.
 *
 * # Safety
 * `g` must be live; `out` valid.
 */
enum RsStatus rs_check_saturated(const struct RsGraph *g,
                                 size_t k,
                                 struct RsBudget budget,
                                 enum RsTri *out);

/**
 * Edge count of a largest `C_k`-free spanning subgraph.
 *
 * # Safety
 * `g` must be live; `out` valid.
 */
enum RsStatus rs_max_free(const struct RsGraph *g, size_t k, size_t *out);

/**
 * DIMACS text of the CNF encoding; free with [`rs_string_free`].
 *
 * # Safety
 * `g` must be live; `out` valid.
 */
enum RsStatus rs_export_cnf(const struct RsGraph *g,
                            size_t k,
                            size_t colors,
                            bool exact,
                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAINBOW_SATURATION_H */
