#ifndef ORIENTED_DIAMETER_H
#define ORIENTED_DIAMETER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum OdStatus {
  OD_STATUS_OK = 0,
  OD_STATUS_NULL_POINTER = 1,
  OD_STATUS_INVALID_ARGUMENT = 2,
  OD_STATUS_PARSE = 3,
  /**
   * The graph has a bridge, is disconnected or is otherwise out of scope.
   */
  OD_STATUS_PRECONDITION = 4,
  OD_STATUS_BUDGET_EXCEEDED = 5,
  /**
   * An internal invariant check failed.
   */
  OD_STATUS_CERTIFIED_FAILURE = 6,
  OD_STATUS_INTERNAL = 7,
} OdStatus;

/**
 * Opaque graph handle.
 */
typedef struct OdGraph OdGraph;

/**
 * Opaque handle to a complete orientation of some graph.
 */
typedef struct OdOrientation OdOrientation;

/**
 * Basic invariants of a graph. `girth` is 0 for a forest and `diameter`
 * is -1 for a disconnected graph.
 */
typedef struct OdGraphInfo {
  size_t n;
  size_t m;
  size_t min_degree;
  size_t girth;
  bool bridgeless;
  int64_t diameter;
} OdGraphInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL if there was none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *od_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *od_version(void);

/**
 * Builds a simple graph on `n` vertices from `m` edges stored as
 * `edges[2*i], edges[2*i+1]`.
 *
 * # Safety
 * `edges` must point to `2*m` readable `size_t` values (it may be NULL when
 * `m` is 0) and `out` must be a valid pointer to writable storage.
 */
enum OdStatus od_graph_new(size_t n, const size_t *edges, size_t m, struct OdGraph **out);

/**
 * Parses a graph in the text format (`n m` header, then one edge per line).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum OdStatus od_graph_parse(const char *text, struct OdGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle from `od_graph_new`/`od_graph_parse` that
 * has not been freed.
 */
void od_graph_free(struct OdGraph *g);

/**
 * Fills `info` with the basic invariants of `g`.
 *
 * # Safety
 * `g` must be a live graph handle and `info` a valid pointer.
 */
enum OdStatus od_graph_analyze(const struct OdGraph *g, struct OdGraphInfo *info);

/**
 * Runs the full construction with `epsilon = eps_num / eps_den` and
 * returns the orientation. The bound it was checked against is available
 * from [`od_orientation_bound_floor`].
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum OdStatus od_orient(const struct OdGraph *g,
                        int64_t eps_num,
                        int64_t eps_den,
                        struct OdOrientation **out);

/**
 * Strong orientation by depth-first search.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum OdStatus od_robbins(const struct OdGraph *g, struct OdOrientation **out);

/**
 * Exact oriented diameter by exhaustive search over graphs with at most
 * `budget` edges. Writes the optimum to `optimum` and, if `out` is not
 * NULL, an optimal orientation to `out`.
 *
 * # Safety
 * `g` must be a live graph handle, `optimum` a valid pointer and `out`
 * NULL or a valid pointer.
 */
enum OdStatus od_oracle(const struct OdGraph *g,
                        size_t budget,
                        size_t jobs,
                        size_t *optimum,
                        struct OdOrientation **out);

/**
 * Releases an orientation. NULL is ignored.
 *
 * # Safety
 * `o` must be NULL or a live orientation handle.
 */
void od_orientation_free(struct OdOrientation *o);

/**
 * Number of arcs, equal to the number of edges of the graph.
 *
 * # Safety
 * `o` must be a live orientation handle.
 */
size_t od_orientation_arc_count(const struct OdOrientation *o);

/**
 * Copies the arcs as `tails[i] -> heads[i]` for `i < len`. `len` must be
 * at least [`od_orientation_arc_count`].
 *
 * # Safety
 * `o` must be a live handle and `tails`, `heads` must each point to `len`
 * writable `size_t` values.
 */
enum OdStatus od_orientation_arcs(const struct OdOrientation *o,
                                  size_t *tails,
                                  size_t *heads,
                                  size_t len);

/**
 * Directed diameter of the orientation. Fails with `Precondition` if the
 * orientation is not strong.
 *
 * # Safety
 * `o` must be a live handle and `diameter` a valid pointer.
 */
enum OdStatus od_orientation_diameter(const struct OdOrientation *o, size_t *diameter);

/**
 * Floor of the bound the orientation was checked against. Only set for
 * orientations from [`od_orient`]; `InvalidArgument` otherwise.
 *
 * # Safety
 * `o` must be a live handle and `floor` a valid pointer.
 */
enum OdStatus od_orientation_bound_floor(const struct OdOrientation *o, int64_t *floor);

/**
 * Ball-size function `h(delta, g)`; returns -1 for `g < 3`.
 */
int64_t od_bound_h(size_t delta, size_t girth);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORIENTED_DIAMETER_H */
