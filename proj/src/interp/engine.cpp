#include "interp/engine.hpp"

#include <algorithm>

namespace taucert {

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified:
      return "certified";
    case Verdict::kInconclusive:
      return "inconclusive";
    case Verdict::kFailed:
      return "failed";
    case Verdict::kObserved:
      return "observed";
  }
  throw std::logic_error("verdict_string: unreachable");
}

Certificate generic_rank_certificate(const std::vector<ComponentKind>& kinds, int m, int d,
                                     int trials, std::uint64_t seed, std::uint64_t prime) {
  if (trials < 1) throw std::invalid_argument("generic_rank_certificate: need trials >= 1");
  FormRing ring(m, d);

  Certificate cert;
  cert.scheme = scheme_spec_string(kinds);
  cert.m = m;
  cert.d = d;
  cert.trials = trials;
  cert.prime = prime;
  cert.cols = static_cast<std::int64_t>(ring.basis(d).size());
  std::int64_t deg = 0;
  for (ComponentKind k : kinds) deg += component_degree(m, k);
  cert.degree = deg;
  cert.expected_rank = std::min(cert.degree, cert.cols);

  const std::uint64_t second = prime == kDefaultPrime ? kFallbackPrime : kDefaultPrime;
  cert.achieved_rank = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    cert.seeds.push_back(trial_seed);
    for (std::uint64_t p : {prime, second}) {
      if (std::find(cert.primes.begin(), cert.primes.end(), p) == cert.primes.end())
        cert.primes.push_back(p);
      SplitMix64 rng(trial_seed);
      const auto s = random_scheme(kinds, m, rng, Fp::zero(p));
      const auto achieved = static_cast<std::int64_t>(rank(assemble(ring, s, d, Fp::zero(p))));
      cert.achieved_rank = std::max(cert.achieved_rank, achieved);
      if (achieved == cert.expected_rank) {
        cert.prime = p;
        cert.verdict = Verdict::kCertified;
        return cert;
      }
      // Retry over the fallback prime only when this prime was inconclusive.
    }
  }
  cert.verdict = Verdict::kInconclusive;
  return cert;
}

}  // namespace taucert
