#ifndef CCLIQUE_H
#define CCLIQUE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcAlgorithm {
  CC_ALGORITHM_FOREST_DECOMP = 0,
  CC_ALGORITHM_COLOR_A2 = 1,
  CC_ALGORITHM_COLOR_A2EPS = 2,
  CC_ALGORITHM_COLOR_A1EPS = 3,
  CC_ALGORITHM_COLOR_OA = 4,
  CC_ALGORITHM_MIS = 5,
  CC_ALGORITHM_UNIVERSAL = 6,
} CcAlgorithm;

typedef enum CcFamily {
  // `size` vertices, `param` forests.
  CC_FAMILY_FOREST_UNION = 0,
  // `size` rows, `param` columns.
  CC_FAMILY_GRID = 1,
  CC_FAMILY_CYCLE = 2,
  CC_FAMILY_STAR = 3,
  CC_FAMILY_COMPLETE = 4,
  // `size` vertices, each linked to up to `param` earlier ones.
  CC_FAMILY_RANDOM_DEGENERATE = 5,
} CcFamily;

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  // Null pointer, bad enum value or malformed argument.
  CC_STATUS_INVALID_ARGUMENT = 1,
  // Rejected algorithm parameters or graph specification.
  CC_STATUS_INVALID_PARAMETERS = 2,
  // A simulated protocol broke the communication model.
  CC_STATUS_PROTOCOL_VIOLATION = 3,
  CC_STATUS_IO = 4,
  // The run finished but its output failed the oracle.
  CC_STATUS_VERIFICATION_FAILED = 5,
  CC_STATUS_PANIC = 6,
} CcStatus;

// Opaque graph handle.
typedef struct CcGraph CcGraph;

// Opaque handle holding the solution and accounting of one run.
typedef struct CcRun CcRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread. Returns its full length;
// at most `len - 1` bytes and a terminator are written to `buf`.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
uintptr_t cc_last_error_message(char *buf, uintptr_t len);

// Builds a graph from `m` edges stored as `2m` consecutive vertex ids.
//
// # Safety
// `edges` must be valid for `2 * m` reads (or null when `m == 0`); `out`
// must be a valid pointer.
enum CcStatus cc_graph_from_edges(uintptr_t n,
                                  const uint32_t *edges,
                                  uintptr_t m,
                                  struct CcGraph **out);

// Generates a graph of the [`CcFamily`] given by `family`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_graph_generate(uint32_t family,
                                uintptr_t size,
                                uint32_t param,
                                uint64_t seed,
                                struct CcGraph **out);

// Reads a graph file in the `p cc` text format.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_graph_load(const char *path, struct CcGraph **out);

// # Safety
// `g` must be null or a handle from this library, not yet freed.
void cc_graph_free(struct CcGraph *g);

// # Safety
// `g` must be a live graph handle.
uintptr_t cc_graph_n(const struct CcGraph *g);

// # Safety
// `g` must be a live graph handle.
uintptr_t cc_graph_m(const struct CcGraph *g);

// Runs `alg` (a [`CcAlgorithm`] value) on a private simulated clique. `a = 0` uses the graph's
// witness or its degeneracy, `p = 0` the default. The run handle is
// produced even when the output fails verification, together with
// `CC_STATUS_VERIFICATION_FAILED`.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum CcStatus cc_run(const struct CcGraph *g,
                     uint32_t alg,
                     uint32_t a,
                     double eps,
                     double eps_h,
                     uint32_t p,
                     struct CcRun **out);

// # Safety
// `r` must be null or a handle from this library, not yet freed.
void cc_run_free(struct CcRun *r);

// # Safety
// `r` must be a live run handle.
uint64_t cc_run_rounds(const struct CcRun *r);

// # Safety
// `r` must be a live run handle.
uint64_t cc_run_lenzen_calls(const struct CcRun *r);

// # Safety
// `r` must be a live run handle.
bool cc_run_verified(const struct CcRun *r);

// Per-vertex values: the color, `1`/`0` for set membership, or the number of
// outgoing forest edges. Writes `min(n, len)` entries and returns `n`.
//
// # Safety
// `r` must be a live run handle and `buf` valid for `len` writes.
uintptr_t cc_run_values(const struct CcRun *r, uint32_t *buf, uintptr_t len);

// Stats record as JSON; same contract as [`cc_last_error_message`].
//
// # Safety
// `r` must be a live run handle and `buf` null or valid for `len` bytes.
uintptr_t cc_run_stats_json(const struct CcRun *r, char *buf, uintptr_t len);

// Solution in the `v <id> <value>` text format; same contract as
// [`cc_last_error_message`].
//
// # Safety
// `r` must be a live run handle and `buf` null or valid for `len` bytes.
uintptr_t cc_run_solution_text(const struct CcRun *r, char *buf, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCLIQUE_H */
