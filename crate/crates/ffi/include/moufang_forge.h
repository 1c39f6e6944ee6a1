#ifndef MOUFANG_FORGE_H
#define MOUFANG_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ForgeFormat {
  FORGE_FORMAT_TEXT = 0,
  FORGE_FORMAT_JSON = 1,
  FORGE_FORMAT_GAP = 2,
} ForgeFormat;

typedef enum ForgeStatus {
  FORGE_STATUS_OK = 0,
  FORGE_STATUS_NULL_ARGUMENT = 1,
  FORGE_STATUS_INVALID_UTF8 = 2,
  FORGE_STATUS_PARSE = 3,
  FORGE_STATUS_STRUCTURAL = 4,
  FORGE_STATUS_VALIDATION = 5,
  FORGE_STATUS_ILL_DEFINED = 6,
  FORGE_STATUS_RESOURCE = 7,
  FORGE_STATUS_PRECONDITION = 8,
  FORGE_STATUS_OUT_OF_RANGE = 9,
  FORGE_STATUS_IO = 10,
  FORGE_STATUS_INTERNAL = 11,
  FORGE_STATUS_PANIC = 12,
} ForgeStatus;

/**
 * A validated loop table.
 */
typedef struct ForgeLoop ForgeLoop;

/**
 * Parsed pair data, not necessarily a valid construction pair.
 */
typedef struct ForgePair ForgePair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *forge_last_error_message(void);

/**
 * Parses a pair file. The pair is not checked against the axioms.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ForgeStatus forge_pair_from_json(const char *json, struct ForgePair **out);

/**
 * Checks C1 to C3 and the map properties; the outcome goes to `holds`.
 *
 * # Safety
 * `pair` must come from [`forge_pair_from_json`]; `holds` must be valid.
 */
enum ForgeStatus forge_pair_verify(const struct ForgePair *pair, bool *holds);

/**
 * # Safety
 * `pair` must come from [`forge_pair_from_json`] or be null.
 */
void forge_pair_free(struct ForgePair *pair);

/**
 * Builds the loop on `C_n × X`.
 *
 * # Safety
 * `pair` must come from [`forge_pair_from_json`]; `out` must be valid.
 */
enum ForgeStatus forge_loop_build(const struct ForgePair *pair,
                                  uint64_t cyclic,
                                  struct ForgeLoop **out);

/**
 * Reads a table in any supported format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ForgeStatus forge_loop_from_text(const char *text, struct ForgeLoop **out);

/**
 * Order of the loop, or 0 for a null handle.
 *
 * # Safety
 * `lp` must be a live loop handle or null.
 */
size_t forge_loop_order(const struct ForgeLoop *lp);

/**
 * # Safety
 * `lp` must be a live loop handle and `out` valid.
 */
enum ForgeStatus forge_loop_mul(const struct ForgeLoop *lp, size_t a, size_t b, size_t *out);

/**
 * Exhaustive check of the four defining Moufang identities.
 *
 * # Safety
 * `lp` must be a live loop handle and `holds` valid.
 */
enum ForgeStatus forge_loop_check_moufang(const struct ForgeLoop *lp, bool *holds);

/**
 * Serializes the table; release the string with [`forge_string_free`].
 *
 * # Safety
 * `lp` must be a live loop handle and `out` valid.
 */
enum ForgeStatus forge_loop_export(const struct ForgeLoop *lp, enum ForgeFormat format, char **out);

/**
 * # Safety
 * `lp` must be a loop handle from this library or null.
 */
void forge_loop_free(struct ForgeLoop *lp);

/**
 * # Safety
 * `s` must be a string returned by this library or null.
 */
void forge_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOUFANG_FORGE_H */
