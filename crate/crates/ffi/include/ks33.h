#ifndef KS33_H
#define KS33_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Ks33Status {
  KS33_STATUS_OK = 0,
  KS33_STATUS_NULL_POINTER = 1,
  KS33_STATUS_INVALID_ARGUMENT = 2,
  KS33_STATUS_INDEX_OUT_OF_RANGE = 3,
  /**
   * The catalog does not have the expected orthogonality structure.
   */
  KS33_STATUS_STRUCTURE = 4,
  KS33_STATUS_IO = 5,
  /**
   * A report was produced but at least one check failed.
   */
  KS33_STATUS_CHECK_FAILED = 6,
  KS33_STATUS_PANIC = 7,
} Ks33Status;

typedef enum Ks33Set {
  KS33_SET_PERES = 0,
  KS33_SET_PENROSE = 1,
  KS33_SET_FAMILY = 2,
} Ks33Set;

typedef enum Ks33Command {
  KS33_COMMAND_VERIFY = 0,
  KS33_COMMAND_PROVE = 1,
  KS33_COMMAND_CRITICAL = 2,
  KS33_COMMAND_MAJORANA = 3,
} Ks33Command;

/**
 * A 33-entry catalog with its unit-normalized state vectors.
 */
typedef struct Ks33Catalog Ks33Catalog;

/**
 * Orthogonality graph plus its triad/dyad decomposition.
 */
typedef struct Ks33Graph Ks33Graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *ks33_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ks33_string_free(char *s);

/**
 * Creates a catalog. The phases are used only for [`Ks33Set::Family`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Ks33Status ks33_catalog_new(enum Ks33Set set,
                                 double alpha,
                                 double beta,
                                 double gamma,
                                 struct Ks33Catalog **out);

/**
 * # Safety
 * `cat` must come from [`ks33_catalog_new`] and not have been freed.
 */
void ks33_catalog_free(struct Ks33Catalog *cat);

/**
 * # Safety
 * `cat` must be a live catalog handle or NULL.
 */
size_t ks33_catalog_len(const struct Ks33Catalog *cat);

/**
 * Unit state vector of ray `index` (1-based) as three real and three
 * imaginary parts.
 *
 * # Safety
 * `cat` must be a live handle; `re` and `im` must each point to 3 doubles.
 */
enum Ks33Status ks33_catalog_ray(const struct Ks33Catalog *cat,
                                 size_t index,
                                 double *re,
                                 double *im);

/**
 * Builds the orthogonality graph. Peres and Penrose catalogs are tested
 * exactly; family catalogs use `tol` on the squared overlap.
 *
 * # Safety
 * `cat` must be a live handle and `out` a valid pointer.
 */
enum Ks33Status ks33_graph_build(const struct Ks33Catalog *cat, double tol, struct Ks33Graph **out);

/**
 * # Safety
 * `g` must come from [`ks33_graph_build`] and not have been freed.
 */
void ks33_graph_free(struct Ks33Graph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t ks33_graph_edge_count(const struct Ks33Graph *g);

/**
 * # Safety
 * `g` must be a live handle or NULL.
 */
bool ks33_graph_has_edge(const struct Ks33Graph *g, uint8_t a, uint8_t b);

/**
 * # Safety
 * `g` must be a live handle; `triads` and `dyads` valid pointers.
 */
enum Ks33Status ks33_graph_counts(const struct Ks33Graph *g, size_t *triads, size_t *dyads);

/**
 * Whether the triads and dyads equal the reference diagram as sets.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
bool ks33_graph_matches_reference(const struct Ks33Graph *g);

/**
 * Searches for a coloring after deleting ray `delete` (0 deletes nothing).
 * On success `*found` says whether one exists; if so `greens[i]` is 1 when
 * ray `i + 1` is green.
 *
 * # Safety
 * `g` must be a live handle, `found` valid, and `greens` point to 33 bytes.
 */
enum Ks33Status ks33_graph_find_coloring(const struct Ks33Graph *g,
                                         uint8_t delete_,
                                         bool *found,
                                         uint8_t *greens);

/**
 * Squared overlap of the spin-1 states of two M-pairs, each given as six
 * doubles (two M-vectors, any nonzero length).
 *
 * # Safety
 * `a` and `b` must each point to 6 doubles; `out` must be valid.
 */
enum Ks33Status ks33_overlap2_mpairs(const double *a, const double *b, double *out);

/**
 * Writes the DIMACS CNF of the coloring constraints to `path`.
 *
 * # Safety
 * `path` must be a NUL-terminated string.
 */
enum Ks33Status ks33_export_cnf(enum Ks33Set set, const char *path, uint8_t delete_);

/**
 * Runs a verification command and returns its JSON report in `*json`
 * (free with [`ks33_string_free`]). The report is returned even when a
 * check fails, in which case the status is [`Ks33Status::CheckFailed`].
 * `samples` applies to family `verify` and to `majorana`; `ray` selects a
 * single deletion for `critical` (0 means all).
 *
 * # Safety
 * `json` must be a valid pointer.
 */
enum Ks33Status ks33_run_report(enum Ks33Command command,
                                enum Ks33Set set,
                                size_t samples,
                                uint8_t ray,
                                uint64_t seed,
                                double tol,
                                char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KS33_H */
