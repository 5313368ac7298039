#ifndef CHOWDEFECT_H
#define CHOWDEFECT_H

/* C interface of the chowdefect library. Every object is an opaque handle
 * released by its *_free function; every fallible call returns a cd_status
 * and leaves a message for cd_last_error() on the calling thread. Strings
 * returned through char** are owned by the caller (cd_string_free). */

#include <stddef.h>
#include <stdint.h>

#if defined(CHOWDEFECT_BUILDING_LIBRARY)
#define CD_API __attribute__((visibility("default")))
#else
#define CD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cd_status {
  CD_OK = 0,
  CD_ERR_INVALID_ARGUMENT = 1,
  CD_ERR_DOMAIN = 2,
  CD_ERR_NON_INTEGRAL = 3,
  CD_ERR_OVERFLOW = 4,
  CD_ERR_INDEX_OUT_OF_RANGE = 5,
  CD_ERR_DIMENSION_MISMATCH = 6,
  CD_ERR_EMPTY_PRODUCT = 7,
  CD_ERR_BUDGET_EXCEEDED = 8,
  CD_ERR_NEGATIVE_COUNT = 9,
  CD_ERR_PARSE = 10,
  CD_ERR_INVARIANT = 11,
  CD_ERR_IO = 12,
  CD_ERR_INTERNAL = 13
} cd_status;

typedef enum cd_family { CD_FAMILY_QUATERNARY = 0, CD_FAMILY_CUBICS = 1 } cd_family;
typedef enum cd_branch { CD_BRANCH_S1 = 1, CD_BRANCH_S2 = 2 } cd_branch;
typedef enum cd_abundance { CD_SUBABUNDANT = 0, CD_SUPERABUNDANT = 1, CD_EQUIABUNDANT = 2 } cd_abundance;
typedef enum cd_verdict { CD_VERDICT_TRUE = 0, CD_VERDICT_UNVERIFIED = 1 } cd_verdict;
typedef enum cd_oracle_class {
  CD_ORACLE_NONDEFECTIVE_EVIDENCE = 0,
  CD_ORACLE_INCONCLUSIVE = 1,
  CD_ORACLE_MATCHES_KNOWN_DEFECTIVE = 2
} cd_oracle_class;

CD_API const char* cd_version(void);
CD_API const char* cd_last_error(void);
CD_API const char* cd_status_name(cd_status s);
CD_API void cd_string_free(char* s);

CD_API const char* cd_family_name(cd_family f);
CD_API const char* cd_branch_name(cd_branch b);
CD_API const char* cd_abundance_name(cd_abundance a);
CD_API const char* cd_verdict_name(cd_verdict v);
CD_API const char* cd_oracle_class_name(cd_oracle_class c);
CD_API cd_status cd_parse_family(const char* text, cd_family* out);
CD_API cd_status cd_parse_branch(const char* text, cd_branch* out);

/* done, total, rank so far */
typedef void (*cd_progress_fn)(int64_t done, int64_t total, int64_t rank, void* user);

typedef struct cd_verify_options {
  int order; /* < 0: K(t) */
  uint32_t prime;
  uint64_t seed;
  int retries;
  int threads;
  uint64_t mem_cap_bytes;
  int streaming;
  cd_progress_fn progress;
  void* progress_user;
} cd_verify_options;

/* Defaults: order K(t), prime 8191, seed 0, 2 retries, 1 thread, streaming
 * off, memory cap 8 GiB or CHOWDEFECT_MEM_CAP_GB when set. */
CD_API void cd_verify_options_init(cd_verify_options* opts);

typedef struct cd_outcome cd_outcome;

typedef struct cd_outcome_info {
  cd_family family;
  int64_t t;
  int order;
  cd_branch branch;
  uint32_t prime;
  uint64_t seed;
  uint64_t master_seed;
  int attempt;
  int retries;
  int64_t rows;
  int64_t full_rows;
  int64_t cols;
  int64_t expected;
  int64_t found;
  cd_abundance abundance;
  cd_verdict verdict;
  int64_t resamples;
  double construct_seconds;
  double rank_seconds;
  uint64_t digest;
} cd_outcome_info;

CD_API cd_status cd_verify(cd_family family, int64_t t, cd_branch branch, const cd_verify_options* opts,
                           cd_outcome** out);
CD_API cd_status cd_outcome_get_info(const cd_outcome* o, cd_outcome_info* info);
CD_API cd_status cd_outcome_certificate(const cd_outcome* o, char** text);
CD_API void cd_outcome_free(cd_outcome* o);

typedef struct cd_schedule cd_schedule;

typedef struct cd_schedule_row {
  int64_t t;
  int order;
  cd_branch branch;
  int64_t points;
  int64_t eta;
  int64_t mu;
  int64_t full_rows;
  int64_t rows;
  int64_t cols;
  int64_t a;
  int64_t expected;
  cd_abundance abundance;
  uint64_t dense_bytes;
  uint64_t streaming_bytes;
} cd_schedule_row;

/* t_cap <= 0 means the full schedule. */
CD_API cd_status cd_schedule_build(cd_family family, int64_t t_cap, cd_schedule** out);
CD_API size_t cd_schedule_size(const cd_schedule* s);
CD_API cd_status cd_schedule_get_row(const cd_schedule* s, size_t i, cd_schedule_row* row);
CD_API void cd_schedule_free(cd_schedule* s);

typedef struct cd_certificate cd_certificate;
typedef struct cd_reverify_report cd_reverify_report;

CD_API cd_status cd_certificate_parse(const char* text, cd_certificate** out);
CD_API cd_status cd_certificate_load(const char* path, cd_certificate** out);
CD_API cd_status cd_certificate_emit(const cd_certificate* c, char** text);
CD_API void cd_certificate_free(cd_certificate* c);

CD_API cd_status cd_reverify(const cd_certificate* c, const cd_verify_options* opts, cd_reverify_report** out);
CD_API int cd_reverify_confirmed(const cd_reverify_report* r);
CD_API cd_status cd_reverify_outcome_info(const cd_reverify_report* r, cd_outcome_info* info);
CD_API size_t cd_reverify_mismatch_count(const cd_reverify_report* r);
CD_API const char* cd_reverify_mismatch(const cd_reverify_report* r, size_t i);
CD_API void cd_reverify_free(cd_reverify_report* r);

typedef struct cd_selfcheck cd_selfcheck;

/* a_table: NULL for the stock table, else 27 entries. */
CD_API cd_status cd_selfcheck_run(int64_t t_max, const int64_t* a_table, cd_selfcheck** out);
CD_API int cd_selfcheck_ok(const cd_selfcheck* s);
CD_API size_t cd_selfcheck_tally_count(const cd_selfcheck* s);
CD_API cd_status cd_selfcheck_tally(const cd_selfcheck* s, size_t i, const char** identity, int64_t* checks,
                                    int64_t* failures);
CD_API size_t cd_selfcheck_violation_count(const cd_selfcheck* s);
CD_API cd_status cd_selfcheck_violation(const cd_selfcheck* s, size_t i, const char** identity, int64_t* t,
                                        int* order, const char** detail);
CD_API void cd_selfcheck_free(cd_selfcheck* s);

typedef struct cd_oracle_result {
  int64_t rank;
  int64_t expected; /* expdim + 1 */
  int64_t ambient;  /* C(n+d, d) */
  int64_t known_defective_rank; /* -1 when no formula applies */
  cd_oracle_class klass;
} cd_oracle_result;

CD_API cd_status cd_oracle_run(int d, int n, int64_t s, uint64_t seed, uint32_t prime, int threads,
                               cd_oracle_result* out);

#ifdef __cplusplus
}
#endif

#endif
