#ifndef ACHOW_H
#define ACHOW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AchowConvention {
  ACHOW_CONVENTION_CYCLIC = 0,
  ACHOW_CONVENTION_ALTERNATING = 1,
} AchowConvention;

// Result codes; the first four agree with the command-line exit codes.
typedef enum AchowStatus {
  ACHOW_STATUS_OK = 0,
  ACHOW_STATUS_ASSERTION_FAILED = 1,
  ACHOW_STATUS_INPUT_ERROR = 2,
  ACHOW_STATUS_CAPABILITY_LIMIT = 3,
  ACHOW_STATUS_NULL_POINTER = 4,
  ACHOW_STATUS_INVALID_UTF8 = 5,
  ACHOW_STATUS_PANIC = 6,
} AchowStatus;

// A parsed cycle file.
typedef struct AchowSession AchowSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses the text of a cycle file into a new session stored in `*out`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum AchowStatus achow_session_parse(const char *text, struct AchowSession **out);

// Adds user face parametrizations in the `[face NAME]` format.
//
// # Safety
// `session` must come from [`achow_session_parse`]; `text` must be a
// NUL-terminated string.
enum AchowStatus achow_session_add_faces(struct AchowSession *session, const char *text);

// Releases a session. Null is ignored.
//
// # Safety
// `session` must come from [`achow_session_parse`] and not be used again.
void achow_session_free(struct AchowSession *session);

// Regulator of the named cycle, written in canonical form to `*out`.
//
// # Safety
// Pointers must be valid; `name` NUL-terminated.
enum AchowStatus achow_regulator(const struct AchowSession *session,
                                 const char *name,
                                 enum AchowConvention convention,
                                 char **out);

// Regulator of the boundary of the named surface. The canonical value is
// written to `*out` when `out` is not null; the status is
// `ACHOW_STATUS_ASSERTION_FAILED` when it is not zero.
//
// # Safety
// `session` and `name` must be valid; `out` may be null.
enum AchowStatus achow_verify_boundary(const struct AchowSession *session,
                                       const char *name,
                                       enum AchowConvention convention,
                                       char **out);

// Checks the wedge and residue identities of the cyclic forms for all
// indices; the number of failing cases is stored in `*failures` when it is
// not null.
//
// # Safety
// `failures` must be null or valid.
enum AchowStatus achow_check_identities(uintptr_t n, uint32_t m, uintptr_t *failures);

// Message of the last failing call on this thread, or null. The pointer is
// valid until the next call into the library on the same thread.
const char *achow_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used again.
void achow_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACHOW_H */
