#ifndef OAK_H
#define OAK_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum OakStatus {
  OAK_STATUS_OK = 0,
  OAK_STATUS_NULL_ARGUMENT = 1,
  OAK_STATUS_INVALID_UTF8 = 2,
  OAK_STATUS_PARSE_ERROR = 3,
  OAK_STATUS_REJECTED = 4,
  OAK_STATUS_NOT_FOUND = 5,
  OAK_STATUS_IO = 6,
  OAK_STATUS_PANIC = 99,
} OakStatus;

// A repository: the built-in ontology and a triple store.
typedef struct OakRepository OakRepository;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next call.
const char *oak_last_error(void);

// Creates an empty repository holding the built-in ontology.
//
// # Safety
// `out` must be a valid pointer.
enum OakStatus oak_repository_new(struct OakRepository **out);

// Loads a repository snapshot.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum OakStatus oak_repository_open(const char *path, struct OakRepository **out);

// Writes the repository to `path` as Turtle.
//
// # Safety
// `repo` must come from this library; `path` must be NUL-terminated.
enum OakStatus oak_repository_save(struct OakRepository *repo_, const char *path);

// Releases a repository. NULL is ignored.
//
// # Safety
// `repo` must come from this library and not be used afterwards.
void oak_repository_free(struct OakRepository *repo_);

// Number of triples in the repository.
//
// # Safety
// `repo` must come from this library and `out` be valid.
enum OakStatus oak_repository_len(struct OakRepository *repo_, uintptr_t *out);

// Wraps a JSON descriptor, imports it and returns its Turtle.
//
// # Safety
// Pointers must be valid; `descriptor_json` NUL-terminated.
enum OakStatus oak_wrap_import(struct OakRepository *repo_,
                               const char *descriptor_json,
                               char **out_turtle);

// Adds Turtle triples; `out_added` receives the number of new triples.
//
// # Safety
// Pointers must be valid; `turtle` NUL-terminated.
enum OakStatus oak_import_turtle(struct OakRepository *repo_,
                                 const char *turtle,
                                 uintptr_t *out_added);

// Runs a SPARQL query; the result is SPARQL-results JSON.
//
// # Safety
// Pointers must be valid; `query` NUL-terminated.
enum OakStatus oak_query(struct OakRepository *repo_, const char *query, char **out_json);

// Keyword search; the result is JSON with the generated query and cards.
//
// # Safety
// Pointers must be valid; `q` NUL-terminated.
enum OakStatus oak_search(struct OakRepository *repo_, const char *q, char **out_json);

// Repository coverage report as JSON.
//
// # Safety
// Pointers must be valid.
enum OakStatus oak_report(struct OakRepository *repo_, char **out_json);

// FOCA total quality μ for grades given as `{"G1": [...], ...}`, with all
// role flags set, an experienced evaluator and Nl = 0.
//
// # Safety
// Pointers must be valid; `grades_json` NUL-terminated.
enum OakStatus oak_foca(const char *grades_json, double *out_mu);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void oak_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OAK_H */
