#ifndef SUPERPATTERN_H
#define SUPERPATTERN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_UTF8 = 2,
  SP_STATUS_PARSE = 3,
  SP_STATUS_INVALID_ARGUMENT = 4,
  SP_STATUS_BUDGET_EXCEEDED = 5,
  SP_STATUS_NOT_FOUND = 6,
  SP_STATUS_SIZE_CAP = 7,
  SP_STATUS_PANIC = 8,
} SpStatus;

/*
 Result of [`sp_simulate`].
 */
typedef struct SpSimSummary SpSimSummary;

/*
 A parsed word.
 */
typedef struct SpWord SpWord;

/*
 Classification flags written by [`sp_classify`].
 */
typedef struct SpClassFlags {
  bool is_superpattern;
  bool is_minimal;
  bool is_strict;
  bool is_minimum;
} SpClassFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Valid until the
 next failing call on the same thread.
 */
const char *sp_last_error(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void sp_string_free(char *s);

/*
 Parses a word (`1213121` or `1,2,13`).

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SpStatus sp_word_parse(const char *text, struct SpWord **out);

/*
 # Safety
 `word` must be NULL or a handle from [`sp_word_parse`], not yet freed.
 */
void sp_word_free(struct SpWord *word);

/*
 Number of letters, 0 for NULL.

 # Safety
 `word` must be NULL or a live handle.
 */
size_t sp_word_len(const struct SpWord *word);

/*
 Copies up to `cap` letters into `buf`; returns the word length.

 # Safety
 `word` must be NULL or a live handle; `buf` must hold `cap` bytes.
 */
size_t sp_word_letters(const struct SpWord *word, uint8_t *buf, size_t cap);

/*
 Classifies `word` against the length-`k` arrangements.

 # Safety
 `word` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_classify(const struct SpWord *word, size_t k, struct SpClassFlags *out);

/*
 Space-separated list of the length-`k` arrangements `word` misses.

 # Safety
 `word` must be a live handle; `out` must be writable.
 */
enum SpStatus sp_missing_patterns(const struct SpWord *word, size_t k, char **out);

/*
 Whether `word` contains `pattern` (dense-rank form, e.g. `1213`).

 # Safety
 `word` must be a live handle, `pattern` a NUL-terminated string, `out` writable.
 */
enum SpStatus sp_contains_pattern(const struct SpWord *word, const char *pattern, bool *out);

/*
 Closed-form `P(tau = n)` for `d` in {2, 3}.

 # Safety
 `out` must be writable.
 */
enum SpStatus sp_pmf(size_t d, size_t n, char **out);

/*
 `P(tau = n)` by exhaustive counting. `budget` 0 selects the default cap.

 # Safety
 `out` must be writable.
 */
enum SpStatus sp_brute_force_pmf(size_t d, size_t k, size_t n, uint64_t budget, char **out);

/*
 Exact mean and variance of `tau` for `d` in {2, 3}.

 # Safety
 `mean` and `variance` must be writable.
 */
enum SpStatus sp_moments(size_t d, char **mean, char **variance);

/*
 Number of strict ternary superpatterns of length `n >= 7`, as a decimal string.

 # Safety
 `out` must be writable.
 */
enum SpStatus sp_count_strict(size_t n, char **out);

/*
 One CSV row `n,gamma_total,s_mu,s_a,s_total,beta_a,beta_b,beta_total`.

 # Safety
 `out` must be writable.
 */
enum SpStatus sp_count_report_csv_row(size_t n, char **out);

/*
 Runs a seeded simulation of `tau`.

 # Safety
 `out` must be writable.
 */
enum SpStatus sp_simulate(size_t d,
                          size_t k,
                          uint64_t trials,
                          uint64_t seed,
                          struct SpSimSummary **out);

/*
 # Safety
 `summary` must be NULL or a handle from [`sp_simulate`], not yet freed.
 */
void sp_sim_summary_free(struct SpSimSummary *summary);

/*
 Sample mean, NaN for NULL.

 # Safety
 `summary` must be NULL or a live handle.
 */
double sp_sim_summary_mean(const struct SpSimSummary *summary);

/*
 Unbiased sample variance, NaN for NULL.

 # Safety
 `summary` must be NULL or a live handle.
 */
double sp_sim_summary_variance(const struct SpSimSummary *summary);

/*
 Number of trials, 0 for NULL.

 # Safety
 `summary` must be NULL or a live handle.
 */
uint64_t sp_sim_summary_trials(const struct SpSimSummary *summary);

/*
 How many trials stopped at exactly `n`.

 # Safety
 `summary` must be NULL or a live handle.
 */
uint64_t sp_sim_summary_count(const struct SpSimSummary *summary, size_t n);

/*
 Smallest observed stopping time, 0 for NULL or no trials.

 # Safety
 `summary` must be NULL or a live handle.
 */
size_t sp_sim_summary_min(const struct SpSimSummary *summary);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERPATTERN_H */
