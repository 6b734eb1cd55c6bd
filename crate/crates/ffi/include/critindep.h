#ifndef CRITINDEP_H
#define CRITINDEP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CiClassification {
  CI_CLASSIFICATION_IRREDUCIBLE = 0,
  CI_CLASSIFICATION_REDUCIBLE = 1,
  CI_CLASSIFICATION_TOTALLY_REDUCIBLE = 2,
} CiClassification;

typedef enum CiFormat {
  // Detect from the first non-comment line.
  CI_FORMAT_AUTO = 0,
  CI_FORMAT_DIMACS = 1,
  CI_FORMAT_EDGE_LIST = 2,
} CiFormat;

// Result code of every fallible call.
typedef enum CiStatus {
  CI_STATUS_OK = 0,
  CI_STATUS_NULL_POINTER = 1,
  CI_STATUS_INVALID_UTF8 = 2,
  CI_STATUS_PARSE = 3,
  CI_STATUS_INVALID_ARGUMENT = 4,
  // The exact search ran out of nodes; the output is still valid but
  // carries no independence number.
  CI_STATUS_BUDGET_EXCEEDED = 5,
  CI_STATUS_BUFFER_TOO_SMALL = 6,
  CI_STATUS_PANIC = 7,
} CiStatus;

// Opaque analysis handle.
typedef struct CiAnalysis CiAnalysis;

// Opaque graph handle.
typedef struct CiGraph CiGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or `NULL`. The
// pointer stays valid until the next failing call on the same thread.
const char *ci_last_error_message(void);

// Parses `text` (NUL-terminated UTF-8) into a new graph.
//
// # Safety
// `text` must be a valid C string and `out` a valid pointer.
enum CiStatus ci_graph_parse(const char *text, enum CiFormat format, struct CiGraph **out);

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `edges` (`2 * edge_count` entries, 0-based ids).
//
// # Safety
// `edges` must point to `2 * edge_count` readable values (or be `NULL` when
// `edge_count` is 0) and `out` must be a valid pointer.
enum CiStatus ci_graph_from_edges(size_t n,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct CiGraph **out);

// # Safety
// `graph` must come from this library and not be freed twice.
void ci_graph_free(struct CiGraph *graph);

// # Safety
// `graph` must be a live handle or `NULL` (returns 0).
size_t ci_graph_vertex_count(const struct CiGraph *graph);

// # Safety
// `graph` must be a live handle or `NULL` (returns 0).
size_t ci_graph_edge_count(const struct CiGraph *graph);

// `max |I| − |N(I)|` over independent sets.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CiStatus ci_critical_difference(const struct CiGraph *graph, size_t *out);

// Independence number through the decomposition. Returns
// `BudgetExceeded` with `*out` set to the best lower bound found when the
// search on the residual runs out of nodes.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CiStatus ci_independence_number(const struct CiGraph *graph,
                                     uint64_t node_budget,
                                     size_t *out);

// Full analysis. On `BudgetExceeded` the handle is still produced and its
// alpha is absent.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum CiStatus ci_analyze(const struct CiGraph *graph,
                         uint64_t node_budget,
                         struct CiAnalysis **out);

// # Safety
// `analysis` must come from [`ci_analyze`] and not be freed twice.
void ci_analysis_free(struct CiAnalysis *analysis);

// # Safety
// `analysis` must be a live handle or `NULL` (returns 0).
size_t ci_analysis_critical_difference(const struct CiAnalysis *analysis);

// # Safety
// `analysis` must be a live handle or `NULL` (returns 0).
size_t ci_analysis_alpha_prime(const struct CiAnalysis *analysis);

// Writes the independence number and returns true, or returns false when
// it is unknown.
//
// # Safety
// `analysis` must be a live handle and `out` a valid pointer.
bool ci_analysis_alpha(const struct CiAnalysis *analysis, size_t *out);

// Matching number, when known (see [`ci_analysis_alpha`]).
//
// # Safety
// `analysis` must be a live handle and `out` a valid pointer.
bool ci_analysis_matching_number(const struct CiAnalysis *analysis, size_t *out);

// # Safety
// `analysis` must be a live handle or `NULL` (returns false).
bool ci_analysis_is_konig_egervary(const struct CiAnalysis *analysis);

// # Safety
// `analysis` must be a live handle; `NULL` yields `Irreducible`.
enum CiClassification ci_analysis_classification(const struct CiAnalysis *analysis);

// Copies X (sorted ids) into `buf`; `*len` receives its size.
//
// # Safety
// `analysis` must be a live handle, `buf` must have room for `cap` values
// (or be `NULL` with `cap` 0), and `len` must be valid.
enum CiStatus ci_analysis_x(const struct CiAnalysis *analysis,
                            size_t *buf,
                            size_t cap,
                            size_t *len);

// Copies the complement of X; see [`ci_analysis_x`].
//
// # Safety
// As for [`ci_analysis_x`].
enum CiStatus ci_analysis_x_complement(const struct CiAnalysis *analysis,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

// Copies the maximum critical independent set; see [`ci_analysis_x`].
//
// # Safety
// As for [`ci_analysis_x`].
enum CiStatus ci_analysis_critical_set(const struct CiAnalysis *analysis,
                                       size_t *buf,
                                       size_t cap,
                                       size_t *len);

// The report as a JSON string, to be released with [`ci_string_free`].
// Returns `NULL` if `analysis` is `NULL`.
//
// # Safety
// `analysis` must be a live handle or `NULL`.
char *ci_analysis_to_json(const struct CiAnalysis *analysis);

// # Safety
// `s` must come from this library and not be freed twice.
void ci_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRITINDEP_H */
