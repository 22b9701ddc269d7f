#include "taucert/taucert.h"

#include <exception>
#include <string>

#include "report/report.hpp"

namespace {

thread_local std::string g_last_error;

struct ReportImpl {
  std::string json;
  taucert_verdict verdict;
};

taucert_verdict to_c_verdict(taucert::Verdict v) {
  switch (v) {
    case taucert::Verdict::kCertified:
      return TAUCERT_VERDICT_CERTIFIED;
    case taucert::Verdict::kInconclusive:
      return TAUCERT_VERDICT_INCONCLUSIVE;
    case taucert::Verdict::kFailed:
      return TAUCERT_VERDICT_FAILED;
    case taucert::Verdict::kObserved:
      return TAUCERT_VERDICT_OBSERVED;
  }
  return TAUCERT_VERDICT_INCONCLUSIVE;
}

// Runs a job, converting exceptions into status codes and the thread-local
// error message. `job` returns (json, verdict).
template <class Job>
taucert_status run_job(taucert_report** report_out, Job&& job) {
  if (report_out == nullptr) {
    g_last_error = "report_out must not be null";
    return TAUCERT_ERR_INVALID_ARGUMENT;
  }
  *report_out = nullptr;
  try {
    auto [json, verdict] = job();
    auto* impl = new ReportImpl{std::move(json), verdict};
    *report_out = reinterpret_cast<taucert_report*>(impl);
    g_last_error.clear();
    return TAUCERT_OK;
  } catch (const taucert::HypothesisError& e) {
    g_last_error = e.what();
    return TAUCERT_ERR_HYPOTHESIS;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TAUCERT_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TAUCERT_ERR_INTERNAL;
  }
}

std::uint64_t pick_prime(std::uint64_t prime) {
  return prime == 0 ? taucert::kDefaultPrime : prime;
}

int pick_trials(int trials) { return trials == 0 ? 5 : trials; }

std::pair<std::string, taucert_verdict> pack(const nlohmann::json& j, taucert::Verdict v) {
  return {j.dump(), to_c_verdict(v)};
}

}  // namespace

extern "C" {

const char* taucert_version(void) { return taucert::tool_version(); }

const char* taucert_status_string(taucert_status status) {
  switch (status) {
    case TAUCERT_OK:
      return "ok";
    case TAUCERT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TAUCERT_ERR_HYPOTHESIS:
      return "hypothesis violation";
    case TAUCERT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* taucert_last_error(void) { return g_last_error.c_str(); }

uint64_t taucert_default_prime(int index) {
  return index == 0 ? taucert::kDefaultPrime : taucert::kFallbackPrime;
}

const char* taucert_schema_json(void) { return taucert::report_schema_json().c_str(); }

taucert_status taucert_parameter_table(int m, int d, int64_t* n_out, int64_t* alpha_out,
                                       int64_t* beta_out) {
  try {
    const auto table = taucert::parameter_table(m, d);
    if (n_out != nullptr) *n_out = table.ambient_dim;
    if (alpha_out != nullptr) *alpha_out = table.alpha;
    if (beta_out != nullptr) *beta_out = table.beta;
    g_last_error.clear();
    return TAUCERT_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TAUCERT_ERR_INVALID_ARGUMENT;
  }
}

taucert_status taucert_expected_dims(int m, int d, int t, int64_t* tau_out, int64_t* sigma_out) {
  try {
    if (tau_out != nullptr) *tau_out = taucert::expected_dim_tau(m, d, t);
    if (sigma_out != nullptr) *sigma_out = taucert::expected_dim_sigma(m, d, t);
    g_last_error.clear();
    return TAUCERT_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TAUCERT_ERR_INVALID_ARGUMENT;
  }
}

taucert_status taucert_dims(int m, int d, int t, uint64_t seed, uint64_t prime,
                            taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report = taucert::dims_report(m, d, t, seed, pick_prime(prime));
    return pack(taucert::to_json(report), report.verdict);
  });
}

taucert_status taucert_rank_certificate(const char* scheme, int m, int d, int trials,
                                        uint64_t seed, uint64_t prime,
                                        taucert_report** report_out) {
  return run_job(report_out, [&] {
    if (scheme == nullptr) throw std::invalid_argument("scheme spec must not be null");
    const auto kinds = taucert::parse_scheme_spec(scheme);
    const auto cert =
        taucert::generic_rank_certificate(kinds, m, d, pick_trials(trials), seed, pick_prime(prime));
    return pack(taucert::to_json(cert), cert.verdict);
  });
}

taucert_status taucert_h1_triples(int m, int d, int trials, uint64_t seed, uint64_t prime,
                                  taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report =
        taucert::certify_h1_triples(m, d, pick_trials(trials), seed, pick_prime(prime));
    return pack(taucert::to_json(report), report.verdict);
  });
}

taucert_status taucert_h1_quadruple(int m, int d, int trials, uint64_t seed, uint64_t prime,
                                    taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto cert =
        taucert::certify_h1_quadruple(m, d, pick_trials(trials), seed, pick_prime(prime));
    return pack(taucert::to_json(cert), cert.verdict);
  });
}

taucert_status taucert_weak_3o(int m, int d, int t, int trials, uint64_t seed, uint64_t prime,
                               taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report =
        taucert::certify_weak_3O(m, d, t, pick_trials(trials), seed, pick_prime(prime));
    return pack(taucert::to_json(report), report.verdict);
  });
}

taucert_status taucert_drip(int m, int d, int t, int trials, uint64_t seed, uint64_t prime,
                            int allow_out_of_range, taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report = taucert::certify_drip(m, d, t, pick_trials(trials), seed,
                                              pick_prime(prime), allow_out_of_range != 0);
    return pack(taucert::to_json(report), report.verdict);
  });
}

taucert_status taucert_duality(int m, int d, int t, uint64_t seed, uint64_t prime,
                               taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report = taucert::duality_check(m, d, t, seed, pick_prime(prime));
    return pack(taucert::to_json(report),
                report.ok ? taucert::Verdict::kCertified : taucert::Verdict::kFailed);
  });
}

taucert_status taucert_unique(int m, int d, int t, int instances, int restarts, uint64_t seed,
                              double tol, double match_tol, taucert_report** report_out) {
  return run_job(report_out, [&] {
    const auto report =
        taucert::unique_lab(m, d, t, instances == 0 ? 1 : instances,
                            restarts == 0 ? 50 : restarts, seed, tol <= 0 ? 1e-8 : tol,
                            match_tol <= 0 ? 1e-6 : match_tol);
    return pack(taucert::to_json(report), report.verdict);
  });
}

taucert_verdict taucert_report_verdict(const taucert_report* report) {
  if (report == nullptr) return TAUCERT_VERDICT_INCONCLUSIVE;
  return reinterpret_cast<const ReportImpl*>(report)->verdict;
}

const char* taucert_report_json(const taucert_report* report) {
  if (report == nullptr) return "";
  return reinterpret_cast<const ReportImpl*>(report)->json.c_str();
}

void taucert_report_free(taucert_report* report) {
  delete reinterpret_cast<ReportImpl*>(report);
}

} /* extern "C" */
