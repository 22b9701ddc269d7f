#include "certify/certify.hpp"

#include <algorithm>

namespace taucert {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw HypothesisError(message);
}

std::vector<ComponentKind> with_doubles(std::vector<ComponentKind> head, std::int64_t doubles) {
  for (std::int64_t i = 0; i < doubles; ++i) head.push_back(ComponentKind::kDouble);
  return head;
}

DenseForm<Fp> random_member(const FormRing& ring, const std::vector<DenseForm<Fp>>& kernel,
                            SplitMix64& rng, std::uint64_t p) {
  DenseForm<Fp> f = zero_form(ring, kernel.front().degree, Fp::zero(p));
  for (const auto& g : kernel) add_scaled(f, g, Fp::raw(rng.below(p), p));
  return f;
}

}  // namespace

Matrix<Fp> hessian_at(const FormRing& ring, const DenseForm<Fp>& f, const ProjPoint<Fp>& point) {
  const int n = ring.m() + 1;
  const std::uint64_t p = point.x[0].p;
  Matrix<Fp> h(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Fp::zero(p));
  Exponents alpha(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::fill(alpha.begin(), alpha.end(), 0);
      alpha[static_cast<std::size_t>(i)] += 1;
      alpha[static_cast<std::size_t>(j)] += 1;
      const Fp value = evaluate(ring, derivative(ring, f, alpha), point);
      h.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = value;
      h.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = value;
    }
  }
  return h;
}

std::size_t hessian_rank_projective(const FormRing& ring, const DenseForm<Fp>& f,
                                    const ProjPoint<Fp>& point) {
  return matrix_rank(hessian_at(ring, f, point));
}

std::size_t hessian_rank_chart(const FormRing& ring, const DenseForm<Fp>& f,
                               const ProjPoint<Fp>& point) {
  const auto h = hessian_at(ring, f, point);
  std::size_t skip = 0;
  while (skip < point.x.size() && point.x[skip].is_zero()) ++skip;
  Matrix<Fp> sub(0, h.cols() - 1, h.zero());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (i == skip) continue;
    std::vector<Fp> row;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (j != skip) row.push_back(h.at(i, j));
    sub.append_row(row);
  }
  return matrix_rank(sub);
}

H1TriplesReport certify_h1_triples(int m, int d, int trials, std::uint64_t seed,
                                   std::uint64_t prime) {
  require(m >= 2, "certify_h1_triples: requires m >= 2");
  require(d >= 5, "certify_h1_triples: requires d >= 5");
  require(m > 4 || d >= 6, "certify_h1_triples: m <= 4 requires d >= 6");

  const auto alpha = parameter_table(m, d).alpha;
  H1TriplesReport report;
  report.m = m;
  report.d = d;
  report.verdict = Verdict::kCertified;
  for (int i = 1; i <= 2; ++i) {
    auto cert = generic_rank_certificate(
        with_doubles(std::vector<ComponentKind>(static_cast<std::size_t>(i), ComponentKind::kTriple),
                     alpha - i),
        m, d, trials, derive_seed(seed, static_cast<std::uint64_t>(i)), prime);
    cert.kind = "h1_triples";
    if (cert.verdict != Verdict::kCertified) report.verdict = Verdict::kInconclusive;
    report.cases.push_back(std::move(cert));
  }
  return report;
}

Certificate certify_h1_quadruple(int m, int d, int trials, std::uint64_t seed,
                                 std::uint64_t prime) {
  require(m >= 2, "certify_h1_quadruple: requires m >= 2");
  require(d >= 6, "certify_h1_quadruple: requires d >= 6");
  require(m > 4 || d >= 7, "certify_h1_quadruple: m <= 4 requires d >= 7");

  const auto beta = parameter_table(m, d).beta;
  auto cert = generic_rank_certificate(with_doubles({ComponentKind::kQuadruple}, beta - 1), m, d,
                                       trials, seed, prime);
  cert.kind = "h1_quadruple";
  return cert;
}

WeakContactReport certify_weak_3O(int m, int d, int t, int trials, std::uint64_t seed,
                                  std::uint64_t prime) {
  require(m >= 2, "certify_weak_3O: requires m >= 2");
  require(d >= 5, "certify_weak_3O: requires d >= 5");
  require(m > 4 || d >= 6, "certify_weak_3O: m <= 4 requires d >= 6");
  require(t >= 3, "certify_weak_3O: requires t >= 3");
  const auto alpha = parameter_table(m, d).alpha;
  require(t <= alpha, "certify_weak_3O: requires t <= alpha = " + std::to_string(alpha));
  if (trials < 1) throw std::invalid_argument("certify_weak_3O: need trials >= 1");

  FormRing ring(m, d);
  const auto kinds = with_doubles({ComponentKind::kTriple}, t - 2);

  WeakContactReport report;
  report.m = m;
  report.d = d;
  report.t = t;
  report.rank_cert.kind = "weak_3O";
  report.rank_cert.scheme = scheme_spec_string(kinds);
  report.rank_cert.m = m;
  report.rank_cert.d = d;
  report.rank_cert.t = t;
  report.rank_cert.trials = trials;
  report.rank_cert.prime = prime;
  report.rank_cert.cols = static_cast<std::int64_t>(ring.basis(d).size());
  report.rank_cert.degree = binomial(m + 2, m) + static_cast<std::int64_t>(t - 2) * (m + 1);
  report.rank_cert.expected_rank = std::min(report.rank_cert.degree, report.rank_cert.cols);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    report.rank_cert.seeds.push_back(trial_seed);
    if (std::find(report.rank_cert.primes.begin(), report.rank_cert.primes.end(), prime) ==
        report.rank_cert.primes.end())
      report.rank_cert.primes.push_back(prime);

    SplitMix64 rng(trial_seed);
    const auto scheme = random_scheme(kinds, m, rng, Fp::zero(prime));
    const auto achieved = static_cast<std::int64_t>(rank(assemble(ring, scheme, d, Fp::zero(prime))));
    report.rank_cert.achieved_rank = std::max(report.rank_cert.achieved_rank, achieved);
    if (achieved != report.rank_cert.expected_rank) continue;
    report.rank_cert.verdict = Verdict::kCertified;

    const auto kernel = kernel_forms(ring, scheme, d, Fp::zero(prime));
    const auto member = random_member(ring, kernel, rng, prime);
    report.hessian_ranks.clear();
    report.hessian_ok = true;
    for (std::size_t i = 1; i < scheme.components.size(); ++i) {
      const auto& fat = std::get<FatPoint<Fp>>(scheme.components[i]);
      const auto rank_h = static_cast<std::int64_t>(hessian_rank_projective(ring, member, fat.point));
      report.hessian_ranks.push_back(rank_h);
      report.hessian_ok = report.hessian_ok && rank_h == m;
    }
    if (report.hessian_ok) {
      report.verdict = Verdict::kCertified;
      return report;
    }
  }
  report.verdict = Verdict::kInconclusive;
  return report;
}

std::string format_point(const std::array<std::uint64_t, 3>& x) {
  return std::to_string(x[0]) + ":" + std::to_string(x[1]) + ":" + std::to_string(x[2]);
}

namespace {

struct DripTrialData {
  SchemeUnion<Fp> scheme;
  const TwoThreePoint<Fp>* z23 = nullptr;
  std::vector<const FatPoint<Fp>*> doubles;
};

DripTrialData draw_drip_scheme(int m, int t, SplitMix64& rng, std::uint64_t prime) {
  DripTrialData data;
  data.scheme = random_scheme(with_doubles({ComponentKind::kTwoThree}, t - 2), m, rng,
                              Fp::zero(prime));
  data.z23 = &std::get<TwoThreePoint<Fp>>(data.scheme.components[0]);
  for (std::size_t i = 1; i < data.scheme.components.size(); ++i)
    data.doubles.push_back(&std::get<FatPoint<Fp>>(data.scheme.components[i]));
  return data;
}

// The tangency identity along the contact line: every functional of
// T_{[v^{d-1}u]} tau(X), u in span{v,w}, annihilates a member of |I_Z(d)|.
// This follows from the Z(O,L) conditions alone, so a failure is an
// implementation bug, not a mathematical finding.
bool contact_line_identity(const FormRing& ring, const DenseForm<Fp>& member,
                           const TwoThreePoint<Fp>& z, SplitMix64& rng, std::uint64_t prime) {
  for (int probe = 0; probe < 5; ++probe) {
    const Fp a = Fp::raw(rng.below(prime), prime);
    const Fp b = Fp::raw(rng.below(prime), prime);
    std::vector<Fp> u(z.origin.x.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = a * z.origin.x[i] + b * z.direction[i];
      nonzero = nonzero || !u[i].is_zero();
    }
    if (!nonzero) continue;
    const auto du = dir_derivative(ring, member, u);
    for (int var = 0; var <= ring.m(); ++var) {
      if (!evaluate(ring, partial(ring, du, var), z.origin).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

DripReport certify_drip(int m, int d, int t, int trials, std::uint64_t seed, std::uint64_t prime,
                        bool allow_out_of_range) {
  require(m >= 2, "certify_drip: requires m >= 2");
  require(d >= 6, "certify_drip: requires d >= 6");
  require(m > 4 || d >= 7, "certify_drip: m <= 4 requires d >= 7");
  require(t >= 3, "certify_drip: requires t >= 3");
  const auto beta = parameter_table(m, d).beta;
  const bool in_range = t <= beta + 1;
  if (!in_range && !allow_out_of_range)
    throw HypothesisError("certify_drip: requires t <= beta+1 = " + std::to_string(beta + 1) +
                          " (pass allow_out_of_range to run anyway)");
  if (trials < 1) throw std::invalid_argument("certify_drip: need trials >= 1");

  FormRing ring(m, d);
  DripReport report;
  report.m = m;
  report.d = d;
  report.t = t;
  report.theorem_range = in_range;
  report.trials = trials;
  report.prime = prime;
  report.expected_rank = static_cast<std::int64_t>(t) * (m + 1) - 1;

  bool red_alert = false;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    report.seeds.push_back(trial_seed);
    if (std::find(report.primes.begin(), report.primes.end(), prime) == report.primes.end())
      report.primes.push_back(prime);

    SplitMix64 rng(trial_seed);
    const auto data = draw_drip_scheme(m, t, rng, prime);

    // (1) the scheme imposes independent conditions.
    const auto achieved =
        static_cast<std::int64_t>(rank(assemble(ring, data.scheme, d, Fp::zero(prime))));
    report.achieved_rank = std::max(report.achieved_rank, achieved);
    report.rank_ok = achieved == report.expected_rank;
    if (!report.rank_ok) continue;

    const auto kernel = kernel_forms(ring, data.scheme, d, Fp::zero(prime));
    const auto member = random_member(ring, kernel, rng, prime);

    // (2) ordinary node at every P_i: projective Hessian rank exactly m.
    report.node_checks.clear();
    bool nodes_ok = true;
    for (const auto* fat : data.doubles) {
      NodeCheck check;
      check.hessian_rank = static_cast<std::int64_t>(hessian_rank_projective(ring, member, fat->point));
      check.ok = check.hessian_rank == m;
      nodes_ok = nodes_ok && check.ok;
      report.node_checks.push_back(check);
    }

    // (3) multiplicity data at O: Hessian rank m-1 with O and w in the
    // kernel, and a nonzero third-order directional derivative along w.
    const auto& z = *data.z23;
    const auto hess = hessian_at(ring, member, z.origin);
    OMultiplicity om;
    om.hessian_rank = static_cast<std::int64_t>(matrix_rank(hess));
    om.kernel_contains_point = true;
    om.kernel_contains_direction = true;
    for (std::size_t i = 0; i < hess.rows(); ++i) {
      Fp acc_o, acc_w;
      for (std::size_t j = 0; j < hess.cols(); ++j) {
        acc_o += hess.at(i, j) * z.origin.x[j];
        acc_w += hess.at(i, j) * z.direction[j];
      }
      om.kernel_contains_point = om.kernel_contains_point && acc_o.is_zero();
      om.kernel_contains_direction = om.kernel_contains_direction && acc_w.is_zero();
    }
    if (!om.kernel_contains_point || !om.kernel_contains_direction)
      throw std::logic_error("certify_drip: Euler/Z(O,L) kernel identity failed -- this is a bug");
    const auto third = dir_derivative(
        ring, dir_derivative(ring, dir_derivative(ring, member, z.direction), z.direction),
        z.direction);
    const Fp third_value = evaluate(ring, third, z.origin);
    om.third_order_value = third_value.v;
    om.third_order_nonzero = !third_value.is_zero();
    om.ok = om.hessian_rank == m - 1 && om.third_order_nonzero;
    report.o_multiplicity = om;

    // (4) tangency along the contact line; an identity given (1).
    report.contact_line_ok = contact_line_identity(ring, member, z, rng, prime);
    if (!report.contact_line_ok)
      throw std::logic_error("certify_drip: contact-line identity failed -- this is a bug");

    // (5) m = 2: the member is singular only at the planted points.
    bool sing_ok = true;
    if (m == 2) {
      const auto locus = enumerate_plane_singular(ring, member, rng);
      if (locus.status != SingStatus::kOk) {
        report.sing_ok = false;
        report.sing_enumeration = std::vector<std::string>{};
        continue;  // degenerate frames or irrational leftovers: try a new trial
      }
      std::vector<std::array<std::uint64_t, 3>> expected;
      expected.push_back(normalize_plane_point({z.origin.x[0], z.origin.x[1], z.origin.x[2]}));
      for (const auto* fat : data.doubles)
        expected.push_back(normalize_plane_point({fat->point.x[0], fat->point.x[1], fat->point.x[2]}));
      std::sort(expected.begin(), expected.end());

      std::vector<std::string> formatted;
      for (const auto& pt : locus.points) formatted.push_back(format_point(pt));
      report.sing_enumeration = formatted;
      sing_ok = locus.points == expected;
      report.sing_ok = sing_ok;
      if (!sing_ok) {
        // Planted points are singular by construction; a complete
        // enumeration that misses one is a bug, not a finding.
        const bool all_planted_found = std::includes(locus.points.begin(), locus.points.end(),
                                                     expected.begin(), expected.end());
        if (!all_planted_found)
          throw std::logic_error("certify_drip: enumeration missed a planted singular point");
        // Extra points are genuinely singular (common zeros of all three
        // polars), so this is a definite counterexample, never discarded.
        red_alert = true;
        break;
      }
    }

    if (nodes_ok && om.ok && report.contact_line_ok && sing_ok) {
      report.verdict = in_range ? Verdict::kCertified : Verdict::kObserved;
      return report;
    }
  }

  report.verdict = red_alert ? Verdict::kFailed : Verdict::kInconclusive;
  return report;
}

}  // namespace taucert
