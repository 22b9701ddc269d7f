// Acceptance suite: runs every certification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit status 0 iff
// all criteria pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "report/report.hpp"

using namespace taucert;
using nlohmann::json;

namespace {

struct CriterionResult {
  bool pass = false;
  std::string detail;
  json artifacts = json::array();  // verdict JSON; reused by the determinism criterion
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// 1. Bounds table: exact integer equality, under a millisecond.
CriterionResult criterion_bounds() {
  CriterionResult r;
  const auto start = std::chrono::steady_clock::now();
  const auto t27 = parameter_table(2, 7);
  const auto t37 = parameter_table(3, 7);
  const auto t55 = parameter_table(5, 5);
  const double elapsed = ms_since(start);
  r.pass = t27.ambient_dim == 35 && t27.alpha == 9 && t27.beta == 7 && t37.ambient_dim == 119 &&
           t37.beta == 14 && t55.alpha == 21 && elapsed < 1.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "N/alpha/beta exact at (2,7),(3,7),(5,5) in %.3f ms", elapsed);
  r.detail = buf;
  return r;
}

// 2. Lemma h1 grid over both primes, 5 trials, < 10 s.
CriterionResult criterion_h1_triples() {
  CriterionResult r;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<int, int>> grid{{2, 6}, {2, 7}, {3, 6}, {3, 7}, {5, 5}, {5, 6}};
  bool all = true;
  for (const auto& [m, d] : grid) {
    for (std::uint64_t prime : {kDefaultPrime, kFallbackPrime}) {
      const auto report = certify_h1_triples(m, d, 5, 1000 + static_cast<std::uint64_t>(m * 10 + d), prime);
      all = all && report.verdict == Verdict::kCertified;
      r.artifacts.push_back(to_json(report));
    }
  }
  const double elapsed = ms_since(start);
  r.pass = all && elapsed < 10000.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "6 pairs x {i=1,2} x 2 primes certified in %.0f ms", elapsed);
  r.detail = buf;
  return r;
}

// 3. Lemma h2 grid, < 10 s.
CriterionResult criterion_h1_quadruple() {
  CriterionResult r;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<int, int>> grid{{2, 7}, {2, 8}, {3, 7}, {5, 6}};
  bool all = true;
  for (const auto& [m, d] : grid) {
    const auto cert = certify_h1_quadruple(m, d, 5, 2000 + static_cast<std::uint64_t>(m * 10 + d));
    all = all && cert.verdict == Verdict::kCertified;
    r.artifacts.push_back(to_json(cert));
  }
  const double elapsed = ms_since(start);
  r.pass = all && elapsed < 10000.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "4 pairs certified in %.0f ms", elapsed);
  r.detail = buf;
  return r;
}

// 4. Drip certificates across the theorem grid with the local checks, < 60 s.
CriterionResult criterion_drip_grid() {
  CriterionResult r;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::pair<int, int>, std::vector<int>>> grid{
      {{2, 7}, {3, 4, 5, 6, 7, 8}},
      {{3, 7}, {3, 7, 14, 15}},
      {{5, 6}, {3, 11, 21, 22}},
  };
  bool all = true;
  int count = 0;
  for (const auto& [md, ts] : grid) {
    for (int t : ts) {
      const auto report = certify_drip(md.first, md.second, t, 3,
                                       3000 + static_cast<std::uint64_t>(count));
      bool ok = report.verdict == Verdict::kCertified &&
                report.achieved_rank == static_cast<std::int64_t>(t) * (md.first + 1) - 1 &&
                report.o_multiplicity.hessian_rank == md.first - 1 &&
                report.o_multiplicity.third_order_nonzero;
      for (const auto& node : report.node_checks) ok = ok && node.hessian_rank == md.first;
      all = all && ok;
      r.artifacts.push_back(to_json(report));
      ++count;
    }
  }
  // Chart-based node test agrees with the projective Hessian on one
  // instance per (m,d) block.
  for (const auto& [md, ts] : grid) {
    (void)ts;
    FormRing ring(md.first, md.second);
    SplitMix64 rng(3100 + static_cast<std::uint64_t>(md.first));
    std::vector<ComponentKind> kinds{ComponentKind::kTwoThree, ComponentKind::kDouble};
    const auto scheme = random_scheme(kinds, md.first, rng, Fp::zero(kDefaultPrime));
    const auto kernel = kernel_forms(ring, scheme, md.second, Fp::zero(kDefaultPrime));
    DenseForm<Fp> member = zero_form(ring, md.second, Fp::zero(kDefaultPrime));
    for (const auto& g : kernel)
      add_scaled(member, g, Fp::raw(rng.below(kDefaultPrime), kDefaultPrime));
    const auto& fat = std::get<FatPoint<Fp>>(scheme.components[1]);
    all = all && hessian_rank_projective(ring, member, fat.point) ==
                     hessian_rank_chart(ring, member, fat.point);
  }

  const double elapsed = ms_since(start);
  r.pass = all && elapsed < 60000.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d drip certificates with node/O/third-order and chart cross-checks in %.0f ms",
                count, elapsed);
  r.detail = buf;
  return r;
}

// 5. Complete singular-locus enumeration at m = 2, all t, 3 seeds each.
CriterionResult criterion_enumeration() {
  CriterionResult r;
  bool all = true;
  int runs = 0;
  for (int t = 3; t <= 8; ++t) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto report = certify_drip(2, 7, t, 1, 5000 + 10 * static_cast<std::uint64_t>(t) + seed);
      const bool ok = report.verdict == Verdict::kCertified && report.sing_ok.value_or(false) &&
                      report.sing_enumeration.has_value() &&
                      static_cast<int>(report.sing_enumeration->size()) == t - 1;
      all = all && ok;
      r.artifacts.push_back(to_json(report));
      ++runs;
    }
  }
  r.pass = all;
  r.detail = std::to_string(runs) + " enumerations found exactly {P_1..P_{t-2}, O}";
  return r;
}

// 6. Primal/dual Terracini duality on 20 seeded configurations.
CriterionResult criterion_duality() {
  CriterionResult r;
  const std::vector<std::tuple<int, int, int>> configs{
      {2, 7, 2}, {2, 7, 3}, {2, 7, 4}, {2, 7, 5}, {2, 7, 6}, {2, 7, 7}, {2, 7, 8},
      {3, 7, 3}, {3, 7, 7}, {3, 7, 10}, {3, 7, 14}, {3, 7, 15},
      {5, 6, 3}, {5, 6, 11}, {5, 6, 22},
      {2, 8, 3}, {2, 8, 5},
      {3, 6, 3}, {3, 6, 4},
      {5, 5, 3},
  };
  bool all = true;
  std::uint64_t seed = 6000;
  for (const auto& [m, d, t] : configs) {
    const auto report = duality_check(m, d, t, seed++);
    all = all && report.ok;
    r.artifacts.push_back(to_json(report));
  }
  r.pass = all;
  r.detail = "20 configurations, primal dimension == dual rank - 1 exactly";
  return r;
}

// 7. Negative controls stay negative.
CriterionResult criterion_negative_controls() {
  CriterionResult r;
  FormRing ring(2, 4);
  SplitMix64 rng(7000);
  const auto clebsch = random_scheme(std::vector<ComponentKind>(5, ComponentKind::kDouble), 2,
                                     rng, Fp::zero(kDefaultPrime));
  const auto coh = cohomology(ring, clebsch, 4, Fp::zero(kDefaultPrime));
  const auto sigma = join_dimension_sigma(2, 4, 5, 7001);
  const auto cert = generic_rank_certificate(std::vector<ComponentKind>(5, ComponentKind::kDouble),
                                             2, 4, 5, 7002);
  r.artifacts.push_back(to_json(cert));
  r.pass = coh.h1 == 1 && sigma == 13 && cert.verdict == Verdict::kInconclusive;
  r.detail = "five double quartic points: h1 = 1, sigma_5 dim 13 < 14, verdict inconclusive";
  return r;
}

// 8. Exact Jacobian rank t(m+1)-1 on 20 seeded instances per parameter set.
CriterionResult criterion_identifiability() {
  CriterionResult r;
  const std::vector<std::tuple<int, int, int>> params{{2, 7, 3}, {2, 7, 5}, {3, 7, 4}, {5, 6, 5}};
  bool all = true;
  for (const auto& [m, d, t] : params) {
    json block{{"m", m}, {"d", d}, {"t", t}, {"ranks", json::array()}};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto inst = plant(m, d, t, 8000 + seed);
      std::int64_t rank = 0;
      const bool ok = local_identifiability(inst, &rank);
      all = all && ok && rank == static_cast<std::int64_t>(t) * (m + 1) - 1;
      block["ranks"].push_back(rank);
    }
    r.artifacts.push_back(std::move(block));
  }
  r.pass = all;
  r.detail = "80 planted instances, exact rational rank t(m+1)-1";
  return r;
}

// 9. Uniqueness experiment, < 5 min.
CriterionResult criterion_uniqueness() {
  CriterionResult r;
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  double worst_rate = 1.0;
  for (int t : {3, 4}) {
    const auto report = unique_lab(2, 7, t, 20, 50, 9000 + static_cast<std::uint64_t>(t));
    const bool ok = report.verdict == Verdict::kCertified &&
                    report.total_matched == report.total_converged &&
                    report.total_converged > 0 && report.avg_convergence_rate >= 0.30;
    worst_rate = std::min(worst_rate, report.avg_convergence_rate);
    all = all && ok;
    r.artifacts.push_back(to_json(report));
  }
  const double elapsed = ms_since(start);
  r.pass = all && elapsed < 300000.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "2x20 instances x 50 restarts, all converged fits match, "
                "min avg convergence %.0f%%, %.1f s",
                100.0 * worst_rate, elapsed / 1000.0);
  r.detail = buf;
  return r;
}

// 10. Analytic Jacobian vs central differences on the lab grid.
CriterionResult criterion_gradient() {
  CriterionResult r;
  const std::vector<std::tuple<int, int, int>> params{{2, 7, 3}, {2, 7, 5}, {3, 7, 4}, {5, 6, 5}};
  bool all = true;
  double worst = 0.0;
  for (const auto& [m, d, t] : params) {
    const double err = jacobian_fd_error(m, d, t, 10000 + static_cast<std::uint64_t>(m + d + t), 10);
    worst = std::max(worst, err);
    all = all && err < 1e-6;
  }
  r.pass = all;
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst relative deviation %.2e < 1e-6", worst);
  r.detail = buf;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;

  std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria{
      {"bounds-table", criterion_bounds},
      {"h1-triples-grid", criterion_h1_triples},
      {"h1-quadruple-grid", criterion_h1_quadruple},
      {"drip-grid", criterion_drip_grid},
      {"singular-locus-enumeration", criterion_enumeration},
      {"terracini-duality", criterion_duality},
      {"negative-controls", criterion_negative_controls},
      {"local-identifiability", criterion_identifiability},
      {"uniqueness-experiment", criterion_uniqueness},
      {"gradient-check", criterion_gradient},
  };

  bool all_pass = true;
  std::vector<json> first_run(criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    first_run[i] = result.artifacts;
    all_pass = all_pass && result.pass;
    std::printf("[%2zu/11] %s  %-28s %s (%.1f s)\n", i + 1, result.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), result.detail.c_str(), ms_since(start) / 1000.0);
    std::fflush(stdout);
  }

  // 11. Determinism: criteria 2-9 re-run with the same seeds must reproduce
  // byte-identical verdict JSON.
  if (only == 0 || only == 11) {
    const auto start = std::chrono::steady_clock::now();
    bool identical = true;
    for (std::size_t i = 1; i <= 8; ++i) {
      CriterionResult again;
      try {
        if (first_run[i].is_null()) first_run[i] = criteria[i].second().artifacts;
        again = criteria[i].second();
      } catch (const std::exception&) {
        identical = false;
        break;
      }
      identical = identical && again.artifacts.dump() == first_run[i].dump();
    }
    all_pass = all_pass && identical;
    std::printf("[11/11] %s  %-28s criteria 2-9 reproduce byte-identical JSON (%.1f s)\n",
                identical ? "PASS" : "FAIL", "determinism", ms_since(start) / 1000.0);
  }

  return all_pass ? 0 : 1;
}
