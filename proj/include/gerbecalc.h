#ifndef GERBECALC_H
#define GERBECALC_H

/* C interface to the gerbecalc engine.
 *
 * All functions that produce text allocate the result with the library's
 * allocator; release it with gc_string_free.  On GC_ERROR the output pointer
 * is left untouched and gc_last_error(e) describes the failure.  GC_VIOLATION
 * means the computation ran fine but at least one checked identity failed;
 * the report is still produced.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gc_engine gc_engine;

typedef enum gc_status { GC_OK = 0, GC_VIOLATION = 1, GC_ERROR = 2 } gc_status;

gc_engine* gc_engine_new(void);
void gc_engine_free(gc_engine* e);
const char* gc_last_error(const gc_engine* e);

/* suite: group | torsor | gerbe | triple | rho | equivalence | cm | all
 * report_format: text | json */
gc_status gc_check(gc_engine* e, const char* dataset_json, const char* suite, int jobs,
                   const char* report_format, char** report_out);

/* mode: trivial | coboundary | abelian | torsor
 * flavor: u2 | u3 | gl3 */
gc_status gc_generate(gc_engine* e, const char* mode, unsigned long long seed, int base_dim,
                      int trunc, const char* flavor, char** dataset_out);

gc_status gc_derive(gc_engine* e, const char* dataset_json, char** dataset_out);
gc_status gc_normalize(gc_engine* e, const char* dataset_json, char** dataset_out);

void gc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GERBECALC_H */
