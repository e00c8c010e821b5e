/* slantlab C API: submanifold classification and warped-product audits for
 * parametric immersions into complex Euclidean space.
 *
 * All report-producing calls return a JSON document (authoritative format)
 * as a malloc'd string owned by the caller; release it with
 * sll_string_free(). On failure they return a non-zero status and, when
 * possible, still produce a report whose "error" field is machine readable.
 * sll_last_error() returns a thread-local message for the most recent
 * failing call on this thread.
 */
#ifndef SLANTLAB_H
#define SLANTLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sll_status {
  SLL_OK = 0,
  SLL_ERR_USAGE = 1,     /* bad names, grids, points, splits, spec documents */
  SLL_ERR_NUMERICAL = 2, /* degenerate immersion, singular angle, domain ... */
  SLL_ERR_INTERNAL = 3
} sll_status;

typedef struct sll_immersion sll_immersion;

typedef struct sll_options {
  double tol_structural;
  double tol_identity;
  double tol_fd;
  double theta_guard;
  uint64_t seed;
  int probes;
  int threads; /* 0 = auto; SLANTLAB_THREADS caps either way */
} sll_options;

const char* sll_version(void);
const char* sll_status_name(sll_status status);
const char* sll_last_error(void);
void sll_string_free(char* s);
void sll_options_init(sll_options* opts);

/* immersion handles */
sll_status sll_immersion_builtin(const char* name, sll_immersion** out);
sll_status sll_immersion_from_spec(const char* json_text, sll_immersion** out);
void sll_immersion_free(sll_immersion* imm);
sll_status sll_immersion_default_grid(const sll_immersion* imm, char** out);

/* commands; out_passed (may be NULL) receives 1 when all audited
 * assertions in the report pass */
sll_status sll_list_examples(char** out_json);
sll_status sll_describe(const sll_immersion* imm, char** out_json);
sll_status sll_classify(const sll_immersion* imm, const char* point,
                        const sll_options* opts, char** out_json,
                        int* out_passed);
sll_status sll_scan(const sll_immersion* imm, const char* grid,
                    const sll_options* opts, char** out_json, int* out_passed);
sll_status sll_check_warped(const sll_immersion* imm, const char* split,
                            const char* grid, const sll_options* opts,
                            char** out_json, int* out_passed);
sll_status sll_identities(const sll_immersion* imm, const char* split_or_null,
                          const char* grid, const char* suite,
                          const sll_options* opts, char** out_json,
                          int* out_passed);
sll_status sll_audit_inequality(const sll_immersion* imm, const char* split,
                                const char* grid, const sll_options* opts,
                                char** out_json, int* out_passed);

/* CSV view of a scan / audit-inequality JSON report */
sll_status sll_report_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SLANTLAB_H */
