#ifndef PINDEX_H
#define PINDEX_H

/* C interface to the prime index density library.
 *
 * Every function returns a pindex_status. On failure the message is available
 * from pindex_last_error() on the calling thread until the next call.
 * Strings returned through char** are owned by the caller and released with
 * pindex_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(PINDEX_BUILDING_LIBRARY)
#define PINDEX_API __attribute__((visibility("default")))
#else
#define PINDEX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pindex_status {
    PINDEX_OK = 0,
    PINDEX_E_INVALID_ARGUMENT = 1,
    PINDEX_E_DOMAIN = 2,
    PINDEX_E_VALIDATION = 3,
    PINDEX_E_RESOURCE = 4,
    PINDEX_E_STATISTICAL = 5,
    PINDEX_E_AMBIGUOUS = 6,
    PINDEX_E_UNSUPPORTED = 7,
    PINDEX_E_PARSE = 8,
    PINDEX_E_OVERFLOW = 9,
    PINDEX_E_INTERNAL = 10
} pindex_status;

typedef struct pindex_group pindex_group;
typedef struct pindex_spec pindex_spec;
typedef struct pindex_frob pindex_frob;

typedef struct pindex_bounded {
    double value;
    double error;
    double lo;
    double hi;
} pindex_bounded;

typedef struct pindex_density_result {
    pindex_bounded value;
    int certified;
} pindex_density_result;

typedef struct pindex_count_result {
    uint64_t x;
    uint64_t total;
    uint64_t matched;
    uint64_t excluded;
    uint64_t frob_total;
    double ratio;
    double std_error;
} pindex_count_result;

typedef struct pindex_mc_result {
    uint64_t degree; /* 0 if it does not fit in 64 bits */
    uint64_t samples;
    uint64_t split;
    double fraction;
} pindex_mc_result;

PINDEX_API const char* pindex_version(void);
PINDEX_API const char* pindex_last_error(void);
PINDEX_API const char* pindex_status_string(pindex_status status);
PINDEX_API void pindex_string_free(char* s);

/* Generators as strings "a", "-a" or "a/b". */
PINDEX_API pindex_status pindex_group_create(const char* const* generators, size_t count, pindex_group** out);
PINDEX_API void pindex_group_destroy(pindex_group* g);
PINDEX_API pindex_status pindex_group_rank(const pindex_group* g, uint32_t* out);

/* Set JSON as in the run configuration's "set" field. */
PINDEX_API pindex_status pindex_spec_from_json(const char* json, pindex_spec** out);
PINDEX_API void pindex_spec_destroy(pindex_spec* s);
PINDEX_API pindex_status pindex_spec_contains(const pindex_spec* s, uint64_t n, int* out);
/* Möbius coefficient g(n) with χ_H = g * 1. */
PINDEX_API pindex_status pindex_spec_g(const pindex_spec* s, uint64_t n, int* out);
/* Classification as JSON {"class", "kappa", ...}. */
PINDEX_API pindex_status pindex_spec_classify(const pindex_spec* s, char** out_json);

/* Congruence condition p mod conductor ∈ residues. A NULL pindex_frob* means none. */
PINDEX_API pindex_status pindex_frob_create(uint64_t conductor, const uint64_t* residues, size_t count,
                                            pindex_frob** out);
PINDEX_API void pindex_frob_destroy(pindex_frob* f);

/* [Q(ζ_m, G^{1/n}) : Q] as a decimal string; n | m. */
PINDEX_API pindex_status pindex_degree(const pindex_group* g, uint64_t m, uint64_t n, char** out_decimal);
/* m = 0 means m = n. */
PINDEX_API pindex_status pindex_degree_montecarlo(const pindex_group* g, uint64_t n, uint64_t m,
                                                  uint64_t prime_budget, pindex_mc_result* out);
/* PINDEX_E_DOMAIN when p divides a generator. */
PINDEX_API pindex_status pindex_index_of(const pindex_group* g, uint64_t p, uint64_t* out);

/* method: "auto", "series", "kfree", "finiteQ", "almostcut", "product",
 * "single_prime" or "limit". out_json may be NULL. */
PINDEX_API pindex_status pindex_density(const pindex_group* g, const pindex_spec* s, const pindex_frob* f,
                                        double eps, const char* method, int allow_uncertified,
                                        pindex_density_result* out, char** out_json);
PINDEX_API pindex_status pindex_count(const pindex_group* g, const pindex_spec* s, const pindex_frob* f,
                                      uint64_t x, pindex_count_result* out);
PINDEX_API pindex_status pindex_constant(const pindex_spec* s, uint32_t rank, double target_error,
                                         pindex_bounded* out, uint64_t* out_cutoff);

/* Validates a run configuration; on success out_canonical (may be NULL)
 * receives the canonical form. */
PINDEX_API pindex_status pindex_config_validate(const char* config_json, char** out_canonical);
/* Runs density | count | compare | constants | classify | degree. out_exit,
 * out_csv and out_histogram_csv may be NULL; the histogram CSV is empty unless
 * a count sets histogram_prime. */
PINDEX_API pindex_status pindex_run(const char* command, const char* config_json, int strict, int* out_exit,
                                    char** out_artifact, char** out_csv, char** out_histogram_csv);

#ifdef __cplusplus
}
#endif

#endif
