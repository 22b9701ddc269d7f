#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lab/unique.hpp"
#include "support/errors.hpp"

using namespace taucert;

namespace {

LinearForm<Rational> lin(std::initializer_list<int> v) {
  LinearForm<Rational> L;
  for (int x : v) L.c.push_back(Rational(x));
  return L;
}

}  // namespace

TEST_CASE("plant: determinism, gates, monomial case") {
  const auto a = plant(2, 7, 3, 1);
  const auto b = plant(2, 7, 3, 1);
  CHECK(a.theta == b.theta);
  CHECK(a.f == b.f);
  CHECK(a.f.size() == 36);

  CHECK_THROWS_AS(plant(2, 6, 3, 1), HypothesisError);   // m <= 4 needs d >= 7
  CHECK_THROWS_AS(plant(2, 7, 9, 1), HypothesisError);   // t <= beta+1 = 8
  CHECK_THROWS_AS(plant(2, 7, 2, 1), HypothesisError);   // t >= 3

  // L_1 = x0, (L_2, L_3) = (x1, x2): f = x1^6 x2 + x0^7.
  const auto inst = make_instance_unchecked(2, 7, 3, {lin({1, 0, 0}), lin({0, 1, 0}), lin({0, 0, 1})});
  FormRing ring(2, 7);
  for (std::size_t i = 0; i < inst.f_exact.c.size(); ++i) {
    const auto& e = ring.basis(7).exponent(i);
    const Rational expected = (e == Exponents{0, 6, 1} || e == Exponents{7, 0, 0})
                                  ? Rational(1)
                                  : Rational(0);
    CHECK(inst.f_exact.c[i] == expected);
  }
}

TEST_CASE("parametrization_jacobian: shape and exact rank") {
  const auto inst = plant(2, 7, 3, 5);
  const auto jac = parametrization_jacobian(inst);
  CHECK(jac.rows() == 9);
  CHECK(jac.cols() == 36);
  CHECK(bareiss_rank(jac) == 8);

  std::int64_t rank = 0;
  CHECK(local_identifiability(inst, &rank));
  CHECK(rank == 8);
}

TEST_CASE("degenerate plant with a repeated direction loses rank") {
  // L_1 equal to the tangent base L_2: the d*L_1^{d-1}x_j rows fall inside
  // the span of the L_2^{d-1}x_j rows.
  const auto inst = make_instance_unchecked(
      2, 7, 3, {lin({1, 2, -1}), lin({1, 2, -1}), lin({0, 1, 3})});
  CHECK_FALSE(local_identifiability(inst));
}

TEST_CASE("local identifiability on seeded instances at (5,6,5)") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = plant(5, 6, 5, seed);
    CHECK(local_identifiability(inst));
  }
}

TEST_CASE("jacobian row span equals the Terracini span at the same points") {
  const auto inst = plant(2, 7, 3, 9);
  FormRing ring(2, 7);

  // Frames over the rationals at the planted points: {L_i^{d-1} x_j} for the
  // X factors and {A^{d-2} B x_j} u {A^{d-1} x_j} for the tangent factor.
  std::vector<std::vector<Rational>> frame_rows;
  auto push_rows = [&](const DenseForm<Rational>& head) {
    for (int var = 0; var <= 2; ++var) {
      LinearForm<Rational> xi{{Rational(0), Rational(0), Rational(0)}};
      xi.c[static_cast<std::size_t>(var)] = Rational(1);
      frame_rows.push_back(multiply_by_linear(ring, head, xi).c);
    }
  };
  push_rows(power_form(ring, inst.forms[0], 6));
  push_rows(multiply_by_linear(ring, power_form(ring, inst.forms[1], 5), inst.forms[2]));
  push_rows(power_form(ring, inst.forms[1], 6));

  Matrix<BigInt> frames(0, 36, BigInt(0));
  for (const auto& row : frame_rows) {
    std::vector<BigInt> r;
    for (const auto& x : row) r.push_back(BigInt(numerator(x)));
    frames.append_row(r);
  }
  const auto jac = parametrization_jacobian(inst);

  Matrix<BigInt> stacked(0, 36, BigInt(0));
  for (std::size_t i = 0; i < jac.rows(); ++i)
    stacked.append_row(std::vector<BigInt>(jac.row(i), jac.row(i) + jac.cols()));
  for (std::size_t i = 0; i < frames.rows(); ++i)
    stacked.append_row(std::vector<BigInt>(frames.row(i), frames.row(i) + frames.cols()));

  const auto r_jac = bareiss_rank(jac);
  const auto r_frames = bareiss_rank(frames);
  const auto r_stacked = bareiss_rank(stacked);
  CHECK(r_jac == r_frames);
  CHECK(r_jac == r_stacked);
}

TEST_CASE("analytic Jacobian agrees with central finite differences") {
  CHECK(jacobian_fd_error(2, 7, 3, 77) < 1e-6);
  CHECK(jacobian_fd_error(3, 7, 4, 78) < 1e-6);
}

TEST_CASE("canonicalize: idempotence, symmetry invariance, zero block") {
  const auto inst = plant(2, 7, 4, 13);
  const auto canon = canonicalize(inst.theta, 2, 7, 4);
  CHECK(canonical_match(canonicalize(canon, 2, 7, 4), canon, 2, 4, 1e-9));

  // Permute the two power blocks and rescale the tangent pair by
  // (lambda, lambda^{1-d}).
  std::vector<double> mutated = inst.theta;
  for (int j = 0; j <= 2; ++j) std::swap(mutated[static_cast<std::size_t>(j)],
                                         mutated[static_cast<std::size_t>(3 + j)]);
  const double lambda = 2.5;
  for (int j = 0; j <= 2; ++j) {
    mutated[static_cast<std::size_t>(6 + j)] *= lambda;
    mutated[static_cast<std::size_t>(9 + j)] *= std::pow(lambda, -6.0);
  }
  CHECK(canonical_match(canonicalize(mutated, 2, 7, 4), canon, 2, 4, 1e-9));

  std::vector<double> with_zero = inst.theta;
  for (int j = 0; j <= 2; ++j) with_zero[static_cast<std::size_t>(j)] = 0.0;
  CHECK_THROWS_AS(canonicalize(with_zero, 2, 7, 4), std::invalid_argument);

  // Even degree: negating a power block leaves the summand unchanged.
  const auto even = plant(5, 6, 4, 14);
  const auto canon_even = canonicalize(even.theta, 5, 6, 4);
  std::vector<double> flipped = even.theta;
  for (int j = 0; j <= 5; ++j) flipped[static_cast<std::size_t>(j)] *= -1.0;
  CHECK(canonical_match(canonicalize(flipped, 5, 6, 4), canon_even, 5, 4, 1e-9));
}

TEST_CASE("fit: recovery matches the plant") {
  const auto inst = plant(2, 7, 3, 21);
  const auto result = fit(inst, 12, 900);
  CHECK(result.converged_count > 0);
  CHECK(result.matched);
  CHECK(result.matched_count == result.converged_count);
  CHECK(result.verdict == Verdict::kCertified);
}

TEST_CASE("fit: scaled target recovers the same decomposition") {
  const auto inst = plant(2, 7, 3, 22);
  std::vector<double> doubled = inst.f;
  for (auto& c : doubled) c *= 2.0;
  const auto result = fit(doubled, 2, 7, 3, 12, 901, 1e-8, 1e-6, &inst.theta);
  CHECK(result.converged_count > 0);
  // Scaling the form rescales the plant by the same factor inside the
  // normalized comparison, so the match still holds.
  CHECK(result.matched);
}

TEST_CASE("fit: requesting t-1 summands stays bounded away from zero") {
  const auto inst = plant(2, 7, 3, 23);
  const auto result = fit(inst.f, 2, 7, 2, 10, 902);
  CHECK(result.converged_count == 0);
  CHECK(result.min_residual > 1e-4);
  CHECK(result.verdict == Verdict::kInconclusive);
}
