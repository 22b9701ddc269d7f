#include "report/report.hpp"

namespace taucert {

using nlohmann::json;

const int kSchemaVersion = 1;

const char* tool_version() { return "1.0.0"; }

DimsReport dims_report(int m, int d, int t, std::uint64_t seed, std::uint64_t prime) {
  DimsReport r;
  r.m = m;
  r.d = d;
  r.t = t;
  r.seed = seed;
  r.prime = prime;
  r.tau_dim = join_dimension_tau(m, d, t, seed, prime);
  r.sigma_dim = join_dimension_sigma(m, d, t, derive_seed(seed, 1), prime);
  r.expected_tau = expected_dim_tau(m, d, t);
  r.expected_sigma = expected_dim_sigma(m, d, t);
  r.verdict = (r.tau_dim == r.expected_tau && r.sigma_dim == r.expected_sigma)
                  ? Verdict::kCertified
                  : Verdict::kInconclusive;
  return r;
}

namespace {

json params_json(int m, int d) { return json{{"m", m}, {"d", d}}; }

json params_json(int m, int d, int t) { return json{{"m", m}, {"d", d}, {"t", t}}; }

}  // namespace

json to_json(const Certificate& cert) {
  json params = params_json(cert.m, cert.d);
  if (cert.t.has_value()) params["t"] = *cert.t;
  params["scheme"] = cert.scheme;
  return json{{"type", "certificate"},
              {"kind", cert.kind},
              {"params", params},
              {"trials", cert.trials},
              {"prime", cert.prime},
              {"primes", cert.primes},
              {"seeds", cert.seeds},
              {"degree", cert.degree},
              {"cols", cert.cols},
              {"expected_rank", cert.expected_rank},
              {"achieved_rank", cert.achieved_rank},
              {"verdict", verdict_string(cert.verdict)}};
}

json to_json(const H1TriplesReport& report) {
  json cases = json::array();
  for (const auto& cert : report.cases) cases.push_back(to_json(cert));
  return json{{"type", "h1_triples_report"},
              {"params", params_json(report.m, report.d)},
              {"cases", cases},
              {"verdict", verdict_string(report.verdict)}};
}

json to_json(const WeakContactReport& report) {
  return json{{"type", "weak_contact_report"},
              {"params", params_json(report.m, report.d, report.t)},
              {"rank_certificate", to_json(report.rank_cert)},
              {"hessian_ranks", report.hessian_ranks},
              {"hessian_ok", report.hessian_ok},
              {"verdict", verdict_string(report.verdict)}};
}

json to_json(const DripReport& report) {
  json nodes = json::array();
  for (const auto& check : report.node_checks)
    nodes.push_back(json{{"hessian_rank", check.hessian_rank}, {"ok", check.ok}});
  json o{{"hessian_rank", report.o_multiplicity.hessian_rank},
         {"kernel_contains_point", report.o_multiplicity.kernel_contains_point},
         {"kernel_contains_direction", report.o_multiplicity.kernel_contains_direction},
         {"third_order_value", report.o_multiplicity.third_order_value},
         {"third_order_nonzero", report.o_multiplicity.third_order_nonzero},
         {"ok", report.o_multiplicity.ok}};
  json out{{"type", "drip_report"},
           {"params", params_json(report.m, report.d, report.t)},
           {"theorem_range", report.theorem_range},
           {"trials", report.trials},
           {"prime", report.prime},
           {"primes", report.primes},
           {"seeds", report.seeds},
           {"expected_rank", report.expected_rank},
           {"achieved_rank", report.achieved_rank},
           {"rank_ok", report.rank_ok},
           {"node_checks", nodes},
           {"o_multiplicity", o},
           {"contact_line_ok", report.contact_line_ok},
           {"verdict", verdict_string(report.verdict)}};
  if (report.sing_enumeration.has_value()) out["sing_enumeration"] = *report.sing_enumeration;
  if (report.sing_ok.has_value()) out["sing_ok"] = *report.sing_ok;
  return out;
}

json to_json(const DualityReport& report) {
  return json{{"type", "duality_report"},
              {"params", params_json(report.m, report.d, report.t)},
              {"seed", report.seed},
              {"prime", report.prime},
              {"primal_dim", report.primal_dim},
              {"dual_rank", report.dual_rank},
              {"ok", report.ok},
              {"verdict", verdict_string(report.ok ? Verdict::kCertified : Verdict::kFailed)}};
}

std::string recovery_verdict_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return "matched";
    case Verdict::kInconclusive:
      return "inconclusive";
    case Verdict::kFailed:
      return "red_alert";
    case Verdict::kObserved:
      return "observed";
  }
  throw std::logic_error("recovery_verdict_string: unreachable");
}

json to_json(const RecoveryResult& result) {
  json candidates = json::array();
  for (const auto& cand : result.candidates) {
    json c{{"residual", cand.residual}, {"converged", cand.converged}};
    if (cand.converged) {
      c["matches_plant"] = cand.matches_plant;
      c["theta_canonical"] = cand.theta_canonical;
    }
    candidates.push_back(std::move(c));
  }
  return json{{"type", "recovery_result"},
              {"params", params_json(result.m, result.d, result.t)},
              {"restarts", result.restarts},
              {"seed", result.seed},
              {"tol", result.tol},
              {"match_tol", result.match_tol},
              {"converged_count", result.converged_count},
              {"matched_count", result.matched_count},
              {"matched", result.matched},
              {"min_residual", result.min_residual},
              {"candidates", candidates},
              {"verdict", recovery_verdict_string(result.verdict)}};
}

json to_json(const UniqueLabReport& report) {
  json results = json::array();
  for (const auto& r : report.results) results.push_back(to_json(r));
  return json{{"type", "unique_report"},
              {"params", params_json(report.m, report.d, report.t)},
              {"instances", report.instances},
              {"restarts", report.restarts},
              {"seed", report.seed},
              {"tol", report.tol},
              {"match_tol", report.match_tol},
              {"results", results},
              {"total_converged", report.total_converged},
              {"total_matched", report.total_matched},
              {"avg_convergence_rate", report.avg_convergence_rate},
              {"verdict", recovery_verdict_string(report.verdict)}};
}

json to_json(const DimsReport& report) {
  return json{{"type", "dims_report"},
              {"params", params_json(report.m, report.d, report.t)},
              {"seed", report.seed},
              {"prime", report.prime},
              {"tau_dim", report.tau_dim},
              {"sigma_dim", report.sigma_dim},
              {"expected_tau", report.expected_tau},
              {"expected_sigma", report.expected_sigma},
              {"verdict", verdict_string(report.verdict)}};
}

namespace {

const char* const kSchemaText = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "taucert report schema",
  "version": 1,
  "$defs": {
    "verdict": {
      "type": "string",
      "enum": ["certified", "inconclusive", "failed", "observed", "matched", "red_alert"]
    },
    "params": {
      "type": "object",
      "required": ["m", "d"],
      "properties": {
        "m": {"type": "integer"},
        "d": {"type": "integer"},
        "t": {"type": "integer"},
        "scheme": {"type": "string"}
      }
    },
    "certificate": {
      "type": "object",
      "required": ["type", "kind", "params", "trials", "prime", "primes", "seeds",
                   "degree", "cols", "expected_rank", "achieved_rank", "verdict"],
      "properties": {
        "type": {"const": "certificate"},
        "kind": {"type": "string"},
        "params": {"$ref": "#/$defs/params"},
        "trials": {"type": "integer"},
        "prime": {"type": "integer"},
        "primes": {"type": "array", "items": {"type": "integer"}},
        "seeds": {"type": "array", "items": {"type": "integer"}},
        "degree": {"type": "integer"},
        "cols": {"type": "integer"},
        "expected_rank": {"type": "integer"},
        "achieved_rank": {"type": "integer"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "h1_triples_report": {
      "type": "object",
      "required": ["type", "params", "cases", "verdict"],
      "properties": {
        "type": {"const": "h1_triples_report"},
        "params": {"$ref": "#/$defs/params"},
        "cases": {"type": "array", "items": {"$ref": "#/$defs/certificate"}},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "weak_contact_report": {
      "type": "object",
      "required": ["type", "params", "rank_certificate", "hessian_ranks", "hessian_ok", "verdict"],
      "properties": {
        "type": {"const": "weak_contact_report"},
        "params": {"$ref": "#/$defs/params"},
        "rank_certificate": {"$ref": "#/$defs/certificate"},
        "hessian_ranks": {"type": "array", "items": {"type": "integer"}},
        "hessian_ok": {"type": "boolean"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "drip_report": {
      "type": "object",
      "required": ["type", "params", "theorem_range", "trials", "prime", "primes", "seeds",
                   "expected_rank", "achieved_rank", "rank_ok", "node_checks",
                   "o_multiplicity", "contact_line_ok", "verdict"],
      "properties": {
        "type": {"const": "drip_report"},
        "params": {"$ref": "#/$defs/params"},
        "theorem_range": {"type": "boolean"},
        "trials": {"type": "integer"},
        "prime": {"type": "integer"},
        "primes": {"type": "array", "items": {"type": "integer"}},
        "seeds": {"type": "array", "items": {"type": "integer"}},
        "expected_rank": {"type": "integer"},
        "achieved_rank": {"type": "integer"},
        "rank_ok": {"type": "boolean"},
        "node_checks": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["hessian_rank", "ok"],
            "properties": {"hessian_rank": {"type": "integer"}, "ok": {"type": "boolean"}}
          }
        },
        "o_multiplicity": {
          "type": "object",
          "required": ["hessian_rank", "kernel_contains_point", "kernel_contains_direction",
                       "third_order_value", "third_order_nonzero", "ok"],
          "properties": {
            "hessian_rank": {"type": "integer"},
            "kernel_contains_point": {"type": "boolean"},
            "kernel_contains_direction": {"type": "boolean"},
            "third_order_value": {"type": "integer"},
            "third_order_nonzero": {"type": "boolean"},
            "ok": {"type": "boolean"}
          }
        },
        "contact_line_ok": {"type": "boolean"},
        "sing_enumeration": {"type": "array", "items": {"type": "string"}},
        "sing_ok": {"type": "boolean"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "duality_report": {
      "type": "object",
      "required": ["type", "params", "seed", "prime", "primal_dim", "dual_rank", "ok", "verdict"],
      "properties": {
        "type": {"const": "duality_report"},
        "params": {"$ref": "#/$defs/params"},
        "seed": {"type": "integer"},
        "prime": {"type": "integer"},
        "primal_dim": {"type": "integer"},
        "dual_rank": {"type": "integer"},
        "ok": {"type": "boolean"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "recovery_result": {
      "type": "object",
      "required": ["type", "params", "restarts", "seed", "tol", "match_tol",
                   "converged_count", "matched_count", "matched", "min_residual",
                   "candidates", "verdict"],
      "properties": {
        "type": {"const": "recovery_result"},
        "params": {"$ref": "#/$defs/params"},
        "restarts": {"type": "integer"},
        "seed": {"type": "integer"},
        "tol": {"type": "number"},
        "match_tol": {"type": "number"},
        "converged_count": {"type": "integer"},
        "matched_count": {"type": "integer"},
        "matched": {"type": "boolean"},
        "min_residual": {"type": "number"},
        "candidates": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["residual", "converged"],
            "properties": {
              "residual": {"type": "number"},
              "converged": {"type": "boolean"},
              "matches_plant": {"type": "boolean"},
              "theta_canonical": {"type": "array", "items": {"type": "number"}}
            }
          }
        },
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "unique_report": {
      "type": "object",
      "required": ["type", "params", "instances", "restarts", "seed", "tol", "match_tol",
                   "results", "total_converged", "total_matched", "avg_convergence_rate",
                   "verdict"],
      "properties": {
        "type": {"const": "unique_report"},
        "params": {"$ref": "#/$defs/params"},
        "instances": {"type": "integer"},
        "restarts": {"type": "integer"},
        "seed": {"type": "integer"},
        "tol": {"type": "number"},
        "match_tol": {"type": "number"},
        "results": {"type": "array", "items": {"$ref": "#/$defs/recovery_result"}},
        "total_converged": {"type": "integer"},
        "total_matched": {"type": "integer"},
        "avg_convergence_rate": {"type": "number"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "dims_report": {
      "type": "object",
      "required": ["type", "params", "seed", "prime", "tau_dim", "sigma_dim",
                   "expected_tau", "expected_sigma", "verdict"],
      "properties": {
        "type": {"const": "dims_report"},
        "params": {"$ref": "#/$defs/params"},
        "seed": {"type": "integer"},
        "prime": {"type": "integer"},
        "tau_dim": {"type": "integer"},
        "sigma_dim": {"type": "integer"},
        "expected_tau": {"type": "integer"},
        "expected_sigma": {"type": "integer"},
        "verdict": {"$ref": "#/$defs/verdict"}
      }
    },
    "envelope": {
      "type": "object",
      "required": ["schema_version", "tool", "jobs"],
      "properties": {
        "schema_version": {"type": "integer"},
        "tool": {"type": "string"},
        "jobs": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["command", "seed", "result"],
            "properties": {
              "command": {"type": "string"},
              "seed": {"type": "integer"},
              "result": {
                "anyOf": [
                  {"$ref": "#/$defs/certificate"},
                  {"$ref": "#/$defs/h1_triples_report"},
                  {"$ref": "#/$defs/weak_contact_report"},
                  {"$ref": "#/$defs/drip_report"},
                  {"$ref": "#/$defs/duality_report"},
                  {"$ref": "#/$defs/recovery_result"},
                  {"$ref": "#/$defs/unique_report"},
                  {"$ref": "#/$defs/dims_report"}
                ]
              }
            }
          }
        },
        "meta": {
          "type": "object",
          "description": "timestamps, host and wall times; never part of the scientific content"
        }
      }
    }
  }
}
)SCHEMA";

}  // namespace

const std::string& report_schema_json() {
  static const std::string schema = kSchemaText;
  return schema;
}

}  // namespace taucert
