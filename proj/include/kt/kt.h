#ifndef KT_KT_H
#define KT_KT_H

/* C interface to the kt library.
 *
 * Every function that can fail returns a kt_status; KT_OK is 0. On failure a
 * human-readable message is stored per thread and can be read back with
 * kt_last_error() until the next failing call on the same thread. Out
 * parameters are written only on KT_OK.
 *
 * Strings returned through char** out parameters are heap-allocated and must
 * be released with kt_string_free(). Handles are opaque and must be released
 * with their matching *_free() function; freeing NULL is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(KT_BUILDING_SHARED)
#define KT_API __attribute__((visibility("default")))
#else
#define KT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kt_status {
  KT_OK = 0,
  KT_ERR_INVALID_ARGUMENT = 1, /* bad handle or argument */
  KT_ERR_PARSE = 2,            /* unreadable input text */
  KT_ERR_PRECONDITION = 3,     /* operation contract violated */
  KT_ERR_CONSISTENCY = 4,      /* internal cross-check failed */
  KT_ERR_INTERNAL = 5
} kt_status;

typedef struct kt_problem kt_problem;
typedef struct kt_report kt_report;
typedef struct kt_polytope kt_polytope;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
KT_API const char* kt_version(void);

/* Message from the most recent failing call on this thread ("" if none).
 * Static per-thread storage; do not free. */
KT_API const char* kt_last_error(void);

/* --- problem files --------------------------------------------------- */

KT_API kt_status kt_problem_parse(const char* text, kt_problem** out);
KT_API void kt_problem_free(kt_problem* problem);

/* Runs all tasks in the problem. `seed` feeds scan tasks that do not carry
 * their own seed. `tolerance` is consulted only when has_tolerance is
 * nonzero; it is accepted only for float-valued table models. */
KT_API kt_status kt_problem_run(const kt_problem* problem, uint64_t seed,
                                double tolerance, int has_tolerance,
                                kt_report** out);

KT_API void kt_report_free(kt_report* report);
KT_API kt_status kt_report_render_text(const kt_report* report, char** out);
KT_API kt_status kt_report_render_json(const kt_report* report, char** out);

/* Suggested process exit code for the report: 0 for a clean run, 2 when any
 * task detected an inconsistency or a scan found a counterexample. */
KT_API int kt_report_exit_code(const kt_report* report);

KT_API void kt_string_free(char* text);

/* --- self test -------------------------------------------------------- */

/* Runs the built-in deterministic test suites. Writes the summary (always,
 * also on failure) and returns 0 when every suite passed, 2 otherwise. A
 * negative return signals an internal error; see kt_last_error(). */
KT_API int kt_selftest(uint64_t seed, char** summary);

/* --- polytopes -------------------------------------------------------- */

/* Builds the convex hull of n_points points in Q^dim. `coords` holds
 * n_points * dim rational literals ("3", "-1/2", ...) in row-major order. */
KT_API kt_status kt_polytope_create(uint32_t dim, size_t n_points,
                                    const char* const* coords,
                                    kt_polytope** out);
KT_API void kt_polytope_free(kt_polytope* polytope);

KT_API kt_status kt_polytope_vertex_count(const kt_polytope* polytope,
                                          size_t* out);

/* Exact volume as a rational literal; "0" for lower-dimensional bodies. */
KT_API kt_status kt_polytope_volume(const kt_polytope* polytope, char** out);

KT_API kt_status kt_polytope_minkowski_sum(const kt_polytope* a,
                                           const kt_polytope* b,
                                           kt_polytope** out);

/* Mixed volume sequence s_0..s_n of a full-dimensional pair, rendered as
 * space-separated rational literals. */
KT_API kt_status kt_polytope_sequence(const kt_polytope* p,
                                      const kt_polytope* q, char** out);

/* Homothety test: writes "scale R shift X1 .. Xd" when q = R*p + shift,
 * "irrational" when the volume ratio rules out any rational witness, and
 * "none" otherwise. */
KT_API kt_status kt_polytope_homothety(const kt_polytope* p,
                                       const kt_polytope* q, char** out);

#ifdef __cplusplus
}
#endif

#endif /* KT_KT_H */
