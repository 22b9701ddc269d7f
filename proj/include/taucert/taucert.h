/*
 * taucert -- exact-arithmetic certification of tangential-secant joins of
 * Veronese varieties and numerical uniqueness experiments for decompositions
 * f = L_{t-1}^{d-1} L_t + sum_i L_i^d.
 *
 * C API: opaque report handles plus status codes. Every certification entry
 * point runs a seeded, reproducible job and returns a JSON report. Handles
 * must be released with taucert_report_free. All functions are thread-safe;
 * the error message of the last failing call is thread-local.
 */

#ifndef TAUCERT_H
#define TAUCERT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum taucert_status {
  TAUCERT_OK = 0,
  TAUCERT_ERR_INVALID_ARGUMENT = 1, /* malformed input (bad scheme spec, trials < 1, ...) */
  TAUCERT_ERR_HYPOTHESIS = 2,       /* a theorem hypothesis gate rejected the parameters */
  TAUCERT_ERR_INTERNAL = 3          /* unexpected failure; see taucert_last_error() */
} taucert_status;

typedef enum taucert_verdict {
  TAUCERT_VERDICT_CERTIFIED = 0,    /* also "matched" for recovery jobs */
  TAUCERT_VERDICT_INCONCLUSIVE = 1,
  TAUCERT_VERDICT_FAILED = 2,       /* definite failure / red alert */
  TAUCERT_VERDICT_OBSERVED = 3      /* ran outside the theorem range; never a certificate */
} taucert_verdict;

typedef struct taucert_report taucert_report;

/* Library version string, e.g. "1.0.0". */
const char* taucert_version(void);

/* Human-readable name of a status code. */
const char* taucert_status_string(taucert_status status);

/* Message of the most recent failing call on this thread ("" if none). */
const char* taucert_last_error(void);

/* The fixed certification primes: index 0 the default, 1 the fallback. */
uint64_t taucert_default_prime(int index);

/* The versioned JSON schema all reports validate against. */
const char* taucert_schema_json(void);

/* N = C(m+d,m)-1, alpha = floor(C(m+d-1,m)/(m+1)), beta = floor(C(m+d-2,m)/(m+1)). */
taucert_status taucert_parameter_table(int m, int d, int64_t* n_out, int64_t* alpha_out,
                                       int64_t* beta_out);

/* Expected dimensions min{N, t(m+1)-2} and min{N, t(m+1)-1}. */
taucert_status taucert_expected_dims(int m, int d, int t, int64_t* tau_out, int64_t* sigma_out);

/*
 * Report-producing jobs. `prime` = 0 selects the default prime, `trials` = 0
 * the default trial count (5). On success *report_out owns the result.
 */

/* Seeded dimensions of tau(X,t) and sigma_t(X) against their expected values. */
taucert_status taucert_dims(int m, int d, int t, uint64_t seed, uint64_t prime,
                            taucert_report** report_out);

/* Generic-rank certificate for an explicit scheme union, e.g. "Z23,2Px7". */
taucert_status taucert_rank_certificate(const char* scheme, int m, int d, int trials,
                                        uint64_t seed, uint64_t prime,
                                        taucert_report** report_out);

/* h^1-vanishing for i triple + (alpha-i) double points, i = 1, 2. */
taucert_status taucert_h1_triples(int m, int d, int trials, uint64_t seed, uint64_t prime,
                                  taucert_report** report_out);

/* h^1-vanishing for one quadruple + (beta-1) double points. */
taucert_status taucert_h1_quadruple(int m, int d, int trials, uint64_t seed, uint64_t prime,
                                    taucert_report** report_out);

/* Independence + ordinary-double-point certificate for 3O u 2O_1..2O_{t-2}. */
taucert_status taucert_weak_3o(int m, int d, int t, int trials, uint64_t seed, uint64_t prime,
                               taucert_report** report_out);

/* The full non-drip-defectivity certificate for tau(X,t). */
taucert_status taucert_drip(int m, int d, int t, int trials, uint64_t seed, uint64_t prime,
                            int allow_out_of_range, taucert_report** report_out);

/* Primal/dual consistency of the Terracini span against the condition matrix. */
taucert_status taucert_duality(int m, int d, int t, uint64_t seed, uint64_t prime,
                               taucert_report** report_out);

/*
 * Planted-decomposition recovery: `instances` seeded plants, `restarts`
 * multi-start descents each. tol <= 0 and match_tol <= 0 select the
 * defaults 1e-8 and 1e-6. The report verdict is "matched" only when every
 * converged fit of every instance matches its plant.
 */
taucert_status taucert_unique(int m, int d, int t, int instances, int restarts, uint64_t seed,
                              double tol, double match_tol, taucert_report** report_out);

/* Accessors. The JSON string lives as long as the report. */
taucert_verdict taucert_report_verdict(const taucert_report* report);
const char* taucert_report_json(const taucert_report* report);
void taucert_report_free(taucert_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TAUCERT_H */
