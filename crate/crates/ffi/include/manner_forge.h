/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef MANNER_FORGE_H
#define MANNER_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum {
  MF_STATUS_OK = 0,
  // A required pointer argument was NULL.
  MF_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  MF_STATUS_INVALID_UTF8 = 2,
  // Symbols, headings, commands or JSON could not be parsed.
  MF_STATUS_PARSE_ERROR = 3,
  // Program text was invalid or rewriting failed.
  MF_STATUS_DSL_ERROR = 4,
  // A generation config or adverb registry was rejected.
  MF_STATUS_CONFIG_ERROR = 5,
  // The command has no solution in the given world.
  MF_STATUS_ORACLE_ERROR = 6,
  // Reading or writing files failed.
  MF_STATUS_IO_ERROR = 7,
  // A dataset directory failed verification.
  MF_STATUS_DATASET_ERROR = 8,
  // An index was outside the valid range.
  MF_STATUS_OUT_OF_RANGE = 9,
  // Predictions did not cover the requested splits.
  MF_STATUS_EVAL_ERROR = 10,
  // The library panicked; this is a bug.
  MF_STATUS_PANIC = 11,
} MfStatus;

// An in-memory dataset.
typedef struct MfDataset MfDataset;

// The builtin adverbs plus an optional registry of extra adverbs.
typedef struct MfLexicon MfLexicon;

// A parsed adverb program.
typedef struct MfProgram MfProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next call into this library on the same thread.
const char *mf_last_error(void);

// Library version as a static string.
const char *mf_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be NULL or a string returned by this library, freed only once.
void mf_string_free(char *s);

// Parses program text.
//
// # Safety
// `text` must be a valid C string; `out` must be writable.
MfStatus mf_program_parse(const char *text, MfProgram **out);

// Looks up a builtin adverb program by surface (`_` may replace spaces).
//
// # Safety
// `name` must be a valid C string; `out` must be writable.
MfStatus mf_program_builtin(const char *name, MfProgram **out);

// # Safety
// `program` must be NULL or a live handle, freed only once.
void mf_program_free(MfProgram *program);

// Canonical program text.
//
// # Safety
// `program` must be a live handle; `out` must be writable.
MfStatus mf_program_serialize(const MfProgram *program, char **out);

// Applies the program's rewriting passes without grounding.
//
// # Safety
// `program` must be a live handle, `input` a valid C string, `out` writable.
MfStatus mf_program_apply(const MfProgram *program,
                          const char *input,
                          uint32_t max_depth,
                          char **out);

// Rewrites `input` with the program, then grounds it from `start_heading`.
//
// # Safety
// `program` must be a live handle, strings valid C strings, `out` writable.
MfStatus mf_program_transform(const MfProgram *program,
                              const char *input,
                              const char *start_heading,
                              uint32_t max_depth,
                              char **out);

// Grounds allocentric symbols to egocentric primitives.
//
// # Safety
// Strings must be valid C strings; `out` must be writable.
MfStatus mf_ground(const char *input, const char *start_heading, char **out);

// Token-for-token equality of two symbol strings.
//
// # Safety
// Strings must be valid C strings; `out` must be writable.
MfStatus mf_exact_match(const char *prediction, const char *target, bool *out);

// Builds a lexicon of the builtins plus the adverbs in `registry_text`
// (NULL for builtins only).
//
// # Safety
// `registry_text` must be NULL or a valid C string; `out` must be writable.
MfStatus mf_lexicon_new(const char *registry_text, MfLexicon **out);

// # Safety
// `lexicon` must be NULL or a live handle, freed only once.
void mf_lexicon_free(MfLexicon *lexicon);

// Number of adverbs in the lexicon.
//
// # Safety
// `lexicon` must be a live handle; `out` must be writable.
MfStatus mf_lexicon_len(const MfLexicon *lexicon, size_t *out);

// Samples `n` extra adverbs and returns the registry text. `weights` is
// NULL or `spinning=..,cautiously=..,detour=..`.
//
// # Safety
// `weights` must be NULL or a valid C string; `out` must be writable.
MfStatus mf_registry_sample(uint64_t seed, size_t n, const char *weights, char **out);

// Ground-truth action sequence for `command` in the situation JSON.
//
// # Safety
// `lexicon` must be a live handle, strings valid C strings, `out` writable.
MfStatus mf_solve(const MfLexicon *lexicon,
                  const char *world_json,
                  const char *command,
                  char **out);

// Executes `actions` in the situation. `*executed` is false if execution
// fails; `*goal` tells whether the `verb` goal holds afterwards.
//
// # Safety
// Strings must be valid C strings; `executed` and `goal` must be writable.
MfStatus mf_execute(const char *world_json,
                    const char *actions,
                    const char *verb,
                    bool *executed,
                    bool *goal);

// Generates a dataset from TOML config text on `jobs` threads (0 = all
// cores).
//
// # Safety
// `config_toml` must be a valid C string; `out` must be writable.
MfStatus mf_dataset_generate(const char *config_toml, size_t jobs, MfDataset **out);

// Reads and verifies a dataset directory.
//
// # Safety
// `dir` must be a valid C string; `out` must be writable.
MfStatus mf_dataset_read(const char *dir, MfDataset **out);

// Writes the dataset into `dir`, which is created if missing.
//
// # Safety
// `dataset` must be a live handle and `dir` a valid C string.
MfStatus mf_dataset_write(MfDataset *dataset, const char *dir);

// # Safety
// `dataset` must be NULL or a live handle, freed only once.
void mf_dataset_free(MfDataset *dataset);

// Number of examples.
//
// # Safety
// `dataset` must be a live handle; `out` must be writable.
MfStatus mf_dataset_len(const MfDataset *dataset, size_t *out);

// Manifest digest identifying the dataset (after writing or reading; an
// unwritten dataset reports the digest of its manifest without file
// digests).
//
// # Safety
// `dataset` must be a live handle; `out` must be writable.
MfStatus mf_dataset_digest(const MfDataset *dataset, char **out);

// Example `index` as its persisted JSON record.
//
// # Safety
// `dataset` must be a live handle; `out` must be writable.
MfStatus mf_dataset_example_json(const MfDataset *dataset, size_t index, char **out);

// Scores predictions (one `{"index", "prediction"}` JSON object per line)
// on the comma-separated splits and returns the report JSON.
//
// # Safety
// `dataset` must be a live handle, strings valid C strings, `out` writable.
MfStatus mf_evaluate(const MfDataset *dataset,
                     const char *splits,
                     const char *predictions,
                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MANNER_FORGE_H */
