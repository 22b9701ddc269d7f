#pragma once

#include <json.hpp>
#include <string>

#include "certify/certify.hpp"
#include "lab/unique.hpp"
#include "tangent/join.hpp"

namespace taucert {

// Actual and expected dimensions of tau(X,t) and sigma_t(X) at seeded
// random parameters.
struct DimsReport {
  int m = 0, d = 0, t = 0;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  std::int64_t tau_dim = 0, sigma_dim = 0;
  std::int64_t expected_tau = 0, expected_sigma = 0;
  Verdict verdict = Verdict::kInconclusive;  // certified iff both match
};

DimsReport dims_report(int m, int d, int t, std::uint64_t seed,
                       std::uint64_t prime = kDefaultPrime);

// JSON views of the report types. Keys are sorted by the serializer, so a
// given report dumps to one canonical byte sequence.
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const H1TriplesReport& report);
nlohmann::json to_json(const WeakContactReport& report);
nlohmann::json to_json(const DripReport& report);
nlohmann::json to_json(const DualityReport& report);
nlohmann::json to_json(const RecoveryResult& result);
nlohmann::json to_json(const UniqueLabReport& report);
nlohmann::json to_json(const DimsReport& report);

// Recovery results use their own verdict vocabulary.
std::string recovery_verdict_string(Verdict v);

// The versioned schema document covering every report type and the CLI
// envelope.
extern const int kSchemaVersion;
const std::string& report_schema_json();

const char* tool_version();

}  // namespace taucert
