#ifndef LINEUP_H
#define LINEUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every `lineup_*` call.
typedef enum LineupStatus {
  LINEUP_STATUS_OK = 0,
  LINEUP_STATUS_NULL_POINTER = 1,
  LINEUP_STATUS_INVALID_UTF8 = 2,
  LINEUP_STATUS_PARSE_ERROR = 3,
  LINEUP_STATUS_UNKNOWN_RULE = 4,
  LINEUP_STATUS_BUDGET_EXHAUSTED = 5,
  LINEUP_STATUS_INVALID_ARGUMENT = 6,
  LINEUP_STATUS_PANIC = 7,
} LineupStatus;

// Opaque election handle.
typedef struct LineupElection LineupElection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next `lineup_*` call on this thread.
const char *lineup_last_error(void);

// Parses an election document (JSON or CSV) into a new handle.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum LineupStatus lineup_election_from_json(const char *text, struct LineupElection **out);

// Releases a handle; null is ignored.
//
// # Safety
// `e` must come from [`lineup_election_from_json`] and not be freed twice.
void lineup_election_free(struct LineupElection *e);

// Writes the candidate and position counts.
//
// # Safety
// `e` must be a live handle; `m` and `q` valid pointers.
enum LineupStatus lineup_election_size(const struct LineupElection *e, size_t *m, size_t *q);

// Runs `rule` (e.g. "utilitarian", "owa:1,1/2") and returns the winner set
// as a JSON string in `out_json`. `winner_cap` 0 means the default cap.
//
// # Safety
// `e` must be a live handle, `rule` a nul-terminated string and
// `out_json` a valid pointer. Free the result with
// [`lineup_string_free`].
enum LineupStatus lineup_solve(const struct LineupElection *e,
                               const char *rule,
                               size_t winner_cap,
                               char **out_json);

// Releases a string returned by the library; null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void lineup_string_free(char *s);

// Gini coefficient of `len` non-negative values.
//
// # Safety
// `values` must point to `len` doubles and `out` be a valid pointer.
enum LineupStatus lineup_gini(const double *values, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINEUP_H */
