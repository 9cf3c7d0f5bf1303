#ifndef MERGE_FORGE_H
#define MERGE_FORGE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of a call.
typedef enum MfStatus {
  MF_STATUS_OK = 0,
  MF_STATUS_NULL_POINTER = 1,
  MF_STATUS_INVALID_UTF8 = 2,
  MF_STATUS_PARSE = 3,
  MF_STATUS_DATA = 4,
  MF_STATUS_UNKNOWN_NAME = 5,
  MF_STATUS_INTERNAL = 6,
} MfStatus;

// A parsed profile document. Opaque to C.
typedef struct MfProfile MfProfile;

// Library version, a static string.
const char *mf_version(void);

// Message of the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *mf_last_error_message(void);

// Parses a profile document.
//
// # Safety
// `doc` must be a NUL-terminated string and `out` a writable pointer.
enum MfStatus mf_profile_parse(const char *doc, struct MfProfile **out);

// Releases a profile. Null is ignored.
//
// # Safety
// `p` must be null or come from [`mf_profile_parse`], and not be freed twice.
void mf_profile_free(struct MfProfile *p);

// Number of bases in the profile.
//
// # Safety
// `p` must come from [`mf_profile_parse`]; `out` must be writable.
enum MfStatus mf_profile_base_count(const struct MfProfile *p, uintptr_t *out);

// Merges the profile under its own constraint. Writes the merged model
// set, e.g. `{000, 001, 110}`.
//
// # Safety
// Pointers must be valid; the string written to `out` is freed with
// [`mf_string_free`].
enum MfStatus mf_merge(const struct MfProfile *p, const char *op, char **out);

// Index `index` of base `agent` on the merge, as a reduced fraction.
//
// # Safety
// Pointers must be valid and `num`, `den` writable.
enum MfStatus mf_index(const struct MfProfile *p,
                       const char *op,
                       const char *agent,
                       const char *index,
                       uint64_t *num,
                       uint64_t *den);

// Searches a semantic strategy space of `agent`. `found` tells whether a
// witness exists; `json` receives the witness as JSON, or `null`.
//
// # Safety
// Pointers must be valid; the string written to `json` is freed with
// [`mf_string_free`].
enum MfStatus mf_manipulate(const struct MfProfile *p,
                            const char *agent,
                            const char *op,
                            const char *index,
                            const char *space,
                            bool *found,
                            char **json);

// Recomputes reference table `id`; `passed` is true when every cell matches.
//
// # Safety
// `passed` must be writable.
enum MfStatus mf_reproduce(uint32_t id, bool *passed);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or come from this library, and not be freed twice.
void mf_string_free(char *s);

#endif  /* MERGE_FORGE_H */
