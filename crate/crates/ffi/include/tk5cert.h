#ifndef TK5CERT_H
#define TK5CERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The three certificate kinds, mirroring the JSON `kind` tag.
 */
typedef enum Tk5CertificateKind {
  /**
   * A verified K5-subdivision witness.
   */
  TK5_CERTIFICATE_KIND_TK5 = 0,
  /**
   * A verified planar embedding.
   */
  TK5_CERTIFICATE_KIND_PLANAR = 1,
  /**
   * A verified vertex cut of order at most 4.
   */
  TK5_CERTIFICATE_KIND_SMALL_CUT = 2,
} Tk5CertificateKind;

/**
 * Status code returned by every fallible entry point.
 */
typedef enum Tk5Status {
  /**
   * The call succeeded; out-parameters are valid.
   */
  TK5_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TK5_STATUS_NULL_ARGUMENT = 1,
  /**
   * Arguments violate the call's contract (vertex out of range, loop
   * edge, certificate kind/payload mismatch, ...).
   */
  TK5_STATUS_BAD_ARGUMENT = 2,
  /**
   * Input text is not valid graph6, edge-list, or certificate JSON.
   */
  TK5_STATUS_PARSE_ERROR = 3,
  /**
   * The graph exceeds the 64-vertex capacity.
   */
  TK5_STATUS_TOO_LARGE = 4,
  /**
   * The search budget ran out before a verdict was reached.
   */
  TK5_STATUS_BUDGET_EXCEEDED = 5,
  /**
   * The certifier exhausted every case the structure theorem allows;
   * indicates an implementation bug, never a property of the input.
   */
  TK5_STATUS_THEOREM_VIOLATION = 6,
  /**
   * An internal invariant failed.
   */
  TK5_STATUS_INTERNAL = 7,
} Tk5Status;

/**
 * An owned certificate. Produce with [`tk5_certify`] or
 * [`tk5_certificate_from_json`].
 */
typedef struct Tk5Certificate Tk5Certificate;

/**
 * An owned graph. Construct with [`tk5_graph_new`] or [`tk5_graph_parse`].
 */
typedef struct Tk5Graph Tk5Graph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an empty graph on `n` vertices (at most 64).
 *
 * # Safety
 * `out` must point to writable memory for one pointer.
 */
enum Tk5Status tk5_graph_new(uintptr_t n, struct Tk5Graph **out);

/**
 * Parse a graph from text, accepting graph6 or an edge list (one `u v`
 * pair per line); the format is detected from the content.
 *
 * # Safety
 * `text` must be a valid nul-terminated string and `out` must point to
 * writable memory for one pointer.
 */
enum Tk5Status tk5_graph_parse(const char *text, struct Tk5Graph **out);

/**
 * Add the undirected edge `u`–`v`. Re-adding an existing edge is an error,
 * as are loops and out-of-range endpoints.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
enum Tk5Status tk5_graph_add_edge(struct Tk5Graph *g, uintptr_t u, uintptr_t v);

/**
 * Number of vertices; 0 when `g` is null.
 *
 * # Safety
 * `g` must be null or a live handle from this library.
 */
uintptr_t tk5_graph_order(const struct Tk5Graph *g);

/**
 * Number of edges; 0 when `g` is null.
 *
 * # Safety
 * `g` must be null or a live handle from this library.
 */
uintptr_t tk5_graph_size(const struct Tk5Graph *g);

/**
 * Release a graph handle. Null is a no-op.
 *
 * # Safety
 * `g` must be null or a live handle from this library, not yet freed.
 */
void tk5_graph_free(struct Tk5Graph *g);

/**
 * Certify the graph: exactly one of a TK5 witness, a planar embedding, or
 * a vertex cut of order ≤ 4. `force_tk5` skips the cut and planarity
 * stages; `budget_steps = 0` selects the default search budget.
 *
 * # Safety
 * `g` must be a live handle and `out` must point to writable memory for
 * one pointer.
 */
enum Tk5Status tk5_certify(const struct Tk5Graph *g,
                           bool force_tk5,
                           uint64_t budget_steps,
                           struct Tk5Certificate **out);

/**
 * Re-check a certificate against a graph. On `TK5_STATUS_OK`, `*valid`
 * says whether the certificate is correct for that graph; a structurally
 * ill-formed pairing of kind and payload reports `TK5_STATUS_BAD_ARGUMENT`
 * instead.
 *
 * # Safety
 * `g` and `c` must be live handles and `valid` must point to writable
 * memory for one `bool`.
 */
enum Tk5Status tk5_verify(const struct Tk5Graph *g, const struct Tk5Certificate *c, bool *valid);

/**
 * The certificate's kind.
 *
 * # Safety
 * `c` must be a live handle and `out` must point to writable memory for
 * one `Tk5CertificateKind`.
 */
enum Tk5Status tk5_certificate_kind(const struct Tk5Certificate *c, enum Tk5CertificateKind *out);

/**
 * Serialize a certificate to JSON. The returned string is owned by the
 * caller and must be released with [`tk5_string_free`].
 *
 * # Safety
 * `c` must be a live handle and `out` must point to writable memory for
 * one pointer.
 */
enum Tk5Status tk5_certificate_to_json(const struct Tk5Certificate *c, char **out);

/**
 * Deserialize a certificate from JSON text.
 *
 * # Safety
 * `text` must be a valid nul-terminated string and `out` must point to
 * writable memory for one pointer.
 */
enum Tk5Status tk5_certificate_from_json(const char *text, struct Tk5Certificate **out);

/**
 * Release a certificate handle. Null is a no-op.
 *
 * # Safety
 * `c` must be null or a live handle from this library, not yet freed.
 */
void tk5_certificate_free(struct Tk5Certificate *c);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tk5_string_free(char *s);

/**
 * A static, nul-terminated name for a status code.
 */
const char *tk5_status_name(enum Tk5Status status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TK5CERT_H */
