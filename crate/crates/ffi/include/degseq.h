#ifndef DEGSEQ_H
#define DEGSEQ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_INVALID_INPUT = 1,
  DS_STATUS_NOT_REALIZABLE = 2,
  DS_STATUS_INVALID_MOVE = 3,
  DS_STATUS_RESOURCE_LIMIT = 4,
  DS_STATUS_INCONSISTENT = 5,
  DS_STATUS_IO = 6,
  DS_STATUS_NULL_POINTER = 7,
  DS_STATUS_BUFFER_TOO_SMALL = 8,
  DS_STATUS_PANIC = 9,
} DsStatus;

typedef enum DsMode {
  /**
   * 2-swaps plus 3-cycle reorientation.
   */
  DS_MODE_FULL = 0,
  /**
   * 2-swaps only.
   */
  DS_MODE_PLAIN = 1,
} DsMode;

/**
 * Result of arc-swap recognition.
 */
typedef struct DsArcSwapReport DsArcSwapReport;

/**
 * Directed realization.
 */
typedef struct DsDigraph DsDigraph;

/**
 * Undirected realization.
 */
typedef struct DsGraph DsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *ds_last_error(void);

/**
 * Sets `*graphical` to whether `degrees[0..n]` is graphical.
 *
 * # Safety
 * `degrees` must point to `n` readable values and `graphical` must be writable.
 */
enum DsStatus ds_is_graphical(const size_t *degrees, size_t n, bool *graphical);

/**
 * Sets `*graphical` to whether the out/in sequence is digraphical.
 *
 * # Safety
 * `out_deg` and `in_deg` must point to `n` readable values each.
 */
enum DsStatus ds_is_digraphical(const size_t *out_deg,
                                const size_t *in_deg,
                                size_t n,
                                bool *graphical);

/**
 * Builds a realization of `degrees[0..n]`.
 *
 * # Safety
 * `degrees` must point to `n` readable values and `out` must be writable.
 */
enum DsStatus ds_graph_realize(const size_t *degrees, size_t n, struct DsGraph **out);

/**
 * Runs `tau` undirected chain steps on `g` in place.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
enum DsStatus ds_graph_sample(struct DsGraph *g, uint64_t tau, uint64_t seed);

/**
 * # Safety
 * `g` must be a live handle from this library or null.
 */
size_t ds_graph_order(const struct DsGraph *g);

/**
 * # Safety
 * `g` must be a live handle from this library or null.
 */
size_t ds_graph_size(const struct DsGraph *g);

/**
 * Writes the sorted edges as `u0 v0 u1 v1 ...` into `buf` (capacity `cap`
 * values) and the edge count into `*written`.
 *
 * # Safety
 * `g` must be a live handle; `buf` must have room for `cap` values.
 */
enum DsStatus ds_graph_edges(const struct DsGraph *g, size_t *buf, size_t cap, size_t *written);

/**
 * # Safety
 * `g` must be a handle from [`ds_graph_realize`] not yet freed, or null.
 */
void ds_graph_free(struct DsGraph *g);

/**
 * Builds a realization of the out/in sequence.
 *
 * # Safety
 * `out_deg` and `in_deg` must point to `n` readable values; `out` must be writable.
 */
enum DsStatus ds_digraph_realize(const size_t *out_deg,
                                 const size_t *in_deg,
                                 size_t n,
                                 struct DsDigraph **out);

/**
 * Runs `tau` directed chain steps on `g` in place.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
enum DsStatus ds_digraph_sample(struct DsDigraph *g, enum DsMode mode, uint64_t tau, uint64_t seed);

/**
 * # Safety
 * `g` must be a live handle from this library or null.
 */
size_t ds_digraph_order(const struct DsDigraph *g);

/**
 * # Safety
 * `g` must be a live handle from this library or null.
 */
size_t ds_digraph_size(const struct DsDigraph *g);

/**
 * Writes the sorted arcs as `tail0 head0 tail1 head1 ...`.
 *
 * # Safety
 * `g` must be a live handle; `buf` must have room for `cap` values.
 */
enum DsStatus ds_digraph_arcs(const struct DsDigraph *g, size_t *buf, size_t cap, size_t *written);

/**
 * # Safety
 * `g` must be a handle from [`ds_digraph_realize`] not yet freed, or null.
 */
void ds_digraph_free(struct DsDigraph *g);

/**
 * Recognizes whether the out/in sequence is an arc-swap sequence.
 *
 * # Safety
 * `out_deg` and `in_deg` must point to `n` readable values; `out` must be writable.
 */
enum DsStatus ds_recognize(const size_t *out_deg,
                           const size_t *in_deg,
                           size_t n,
                           struct DsArcSwapReport **out);

/**
 * # Safety
 * `r` must be a live report handle or null.
 */
bool ds_report_is_arc_swap(const struct DsArcSwapReport *r);

/**
 * Number of induced cycle sets; the state graph has `2^count` components.
 *
 * # Safety
 * `r` must be a live report handle or null.
 */
size_t ds_report_cycle_set_count(const struct DsArcSwapReport *r);

/**
 * Copies the sorted vertex triple of cycle set `index` into `vertices`.
 *
 * # Safety
 * `r` must be a live report handle; `vertices` must have room for 3 values.
 */
enum DsStatus ds_report_cycle_set(const struct DsArcSwapReport *r, size_t index, size_t *vertices);

/**
 * # Safety
 * `r` must be a handle from [`ds_recognize`] not yet freed, or null.
 */
void ds_report_free(struct DsArcSwapReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEGSEQ_H */
