#ifndef CHEEGERKIT_H
#define CHEEGERKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  CK_OK = 0,
  CK_NULL_POINTER = 1,
  CK_INVALID_UTF8 = 2,
  CK_PARSE = 3,
  CK_VALIDATION = 4,
  CK_CAP_EXCEEDED = 5,
  CK_NUMERICAL = 6,
  CK_IO = 7,
  CK_PANIC = 8,
} CkStatus;

/**
 * An instance: graph plus signature, measure and optional connection.
 */
typedef struct CkGraph CkGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ck_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ck_version(void);

/**
 * Builds a graph from a descriptor such as `cayley:zn:5:1,4` or `petersen`.
 *
 * # Safety
 * `descriptor` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
CkStatus ck_graph_from_descriptor(const char *descriptor, CkGraph **out);

/**
 * Parses graph-file or instance-file JSON.
 *
 * # Safety
 * As for [`ck_graph_from_descriptor`].
 */
CkStatus ck_graph_from_json(const char *json, CkGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from this library not yet freed.
 */
void ck_graph_free(CkGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
CkStatus ck_graph_vertex_count(const CkGraph *graph, size_t *out);

/**
 * Computes the comma-separated constants in `which` (null or empty for all)
 * and writes a JSON document to `out`. Constants that exceed a cap or do not
 * apply are reported inside the document, not as an error status.
 *
 * # Safety
 * `graph` must be a live handle, `which` null or NUL-terminated, `out` writable.
 */
CkStatus ck_constants_json(const CkGraph *graph, const char *which, uint64_t seed, char **out);

/**
 * Runs the registry entries in `ids` (null or empty for all) and writes the
 * report JSON to `out` and the number of failing verdicts to `failures`
 * (which may be null).
 *
 * # Safety
 * As for [`ck_constants_json`]; `failures` must be null or writable.
 */
CkStatus ck_verify_json(const CkGraph *graph,
                        const char *ids,
                        uint64_t seed,
                        char **out,
                        uint32_t *failures);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void ck_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEEGERKIT_H */
