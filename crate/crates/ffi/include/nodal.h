#ifndef NODAL_H
#define NODAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Filter bits for [`nodal_enumerate`].
#define NODAL_FILTER_COMMUTATIVE 1

#define NODAL_FILTER_NON_HEREDITARY 2

#define NODAL_FILTER_HEREDITARY 4

#define NODAL_FILTER_BASIC 8

#define NODAL_FILTER_INCLUDE_DECOMPOSABLE 16

// Result code of every fallible call.
typedef enum NodalStatus {
  NODAL_STATUS_OK = 0,
  NODAL_STATUS_NULL_POINTER = 1,
  NODAL_STATUS_INVALID_UTF8 = 2,
  NODAL_STATUS_PARSE = 3,
  NODAL_STATUS_INVALID = 4,
  NODAL_STATUS_INTERNAL = 5,
} NodalStatus;

// A validated tuple.
typedef struct NodalTuple NodalTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static string.
const char *nodal_version(void);

// Message of the last failed call on this thread, or null. Valid until the next call.
const char *nodal_last_error(void);

// Parses and validates a tuple from JSON.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum NodalStatus nodal_tuple_from_json(const char *json, struct NodalTuple **out);

// # Safety
// `t` must come from this library and not be freed twice. Null is ignored.
void nodal_tuple_free(struct NodalTuple *t);

// Fully explicit JSON form of the tuple.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum NodalStatus nodal_tuple_to_json(const struct NodalTuple *t, char **out);

// Canonical key: equal keys iff equivalent tuples.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum NodalStatus nodal_tuple_canonical_key(const struct NodalTuple *t, char **out);

// Weight-forgetting reduction as a new handle.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum NodalStatus nodal_tuple_basify(const struct NodalTuple *t, struct NodalTuple **out);

// Decides equivalence. `witness_json` may be null; otherwise it receives the witness
// JSON, or null when the tuples are not equivalent.
//
// # Safety
// `a` and `b` must be live handles; `equivalent_out` must be writable.
enum NodalStatus nodal_tuple_equivalent(const struct NodalTuple *a,
                                        const struct NodalTuple *b,
                                        bool *equivalent_out,
                                        char **witness_json);

// Assembles A_N and runs every nodality check. `report_json` may be null.
//
// # Safety
// `t` must be a live handle; `all_pass` must be writable.
enum NodalStatus nodal_tuple_verify(const struct NodalTuple *t,
                                    size_t trunc,
                                    bool *all_pass,
                                    char **report_json);

// Class representatives within the bounds, as JSON lines `{key, representative}`.
// `filters` is a bitwise or of the `NODAL_FILTER_*` constants.
//
// # Safety
// `out` must be writable.
enum NodalStatus nodal_enumerate(size_t max_elements,
                                 uint32_t max_weight,
                                 uint32_t filters,
                                 char **out);

// # Safety
// `s` must come from this library. Null is ignored.
void nodal_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NODAL_H */
