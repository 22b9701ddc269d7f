#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forms/dense_form.hpp"
#include "forms/monomials.hpp"
#include "support/rng.hpp"

using namespace taucert;

namespace {

// Independent binomial oracle: Pascal's triangle.
std::int64_t pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<std::int64_t>> row(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    row[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j)
      row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          row[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  return row[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// a >_grevlex b for equal total degree: last nonzero entry of a-b negative.
bool grevlex_greater(const Exponents& a, const Exponents& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    const int diff = a[i] - b[i];
    if (diff != 0) return diff < 0;
  }
  return false;
}

LinearForm<Fp> random_linear_fp(SplitMix64& rng, int m, std::uint64_t p) {
  LinearForm<Fp> L;
  for (int i = 0; i <= m; ++i) L.c.push_back(Fp::raw(rng.below(p), p));
  return L;
}

ProjPoint<Fp> random_point_fp(SplitMix64& rng, int m, std::uint64_t p) {
  ProjPoint<Fp> P;
  for (int i = 0; i <= m; ++i) P.x.push_back(Fp::raw(rng.below(p), p));
  return P;
}

DenseForm<Fp> random_form_fp(SplitMix64& rng, const FormRing& ring, int d, std::uint64_t p) {
  DenseForm<Fp> f = zero_form(ring, d, Fp::zero(p));
  for (auto& c : f.c) c = Fp::raw(rng.below(p), p);
  return f;
}

}  // namespace

TEST_CASE("parameter table reproduces the frozen bounds") {
  auto t = parameter_table(2, 7);
  CHECK(t.ambient_dim == 35);
  CHECK(t.alpha == 9);
  CHECK(t.beta == 7);

  t = parameter_table(3, 7);
  CHECK(t.ambient_dim == 119);
  CHECK(t.beta == 14);

  CHECK(parameter_table(5, 5).alpha == 21);

  CHECK(expected_dim_tau(2, 7, 3) == 7);
  CHECK(expected_dim_sigma(2, 7, 3) == 8);

  // Join of two points fills the line.
  CHECK(parameter_table(1, 1).ambient_dim == 1);
  CHECK(expected_dim_sigma(1, 1, 2) == 1);
}

TEST_CASE("parameter table agrees with the Pascal-triangle oracle on a grid") {
  for (int m = 1; m <= 5; ++m) {
    for (int d = 2; d <= 8; ++d) {
      const auto t = parameter_table(m, d);
      CHECK(t.ambient_dim == pascal(m + d, m) - 1);
      CHECK(t.alpha == pascal(m + d - 1, m) / (m + 1));
      CHECK(t.beta == pascal(m + d - 2, m) / (m + 1));
    }
  }
}

TEST_CASE("binomial matches Pascal and overflows loudly") {
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal(n, k));
  CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("monomial basis: size, order and index lookup") {
  const MonomialBasis b12(1, 2);
  REQUIRE(b12.size() == 3);
  CHECK(b12.exponent(0) == Exponents{2, 0});
  CHECK(b12.exponent(1) == Exponents{1, 1});
  CHECK(b12.exponent(2) == Exponents{0, 2});

  CHECK(MonomialBasis(2, 7).size() == 36);
  const MonomialBasis b30(3, 0);
  REQUIRE(b30.size() == 1);
  CHECK(b30.exponent(0) == Exponents{0, 0, 0, 0});

  for (int m = 1; m <= 4; ++m) {
    for (int d = 0; d <= 6; ++d) {
      const MonomialBasis b(m, d);
      CHECK(static_cast<std::int64_t>(b.size()) == pascal(m + d, m));
      for (std::size_t i = 0; i < b.size(); ++i) {
        int total = 0;
        for (int e : b.exponent(i)) {
          total += e;
          CHECK(e >= 0);
        }
        CHECK(total == d);
        CHECK(b.index_of(b.exponent(i)) == i);
        if (i + 1 < b.size()) CHECK(grevlex_greater(b.exponent(i), b.exponent(i + 1)));
      }
    }
  }
}

TEST_CASE("power_form: binomial expansion and monomial case") {
  FormRing ring(1, 4);
  LinearForm<Rational> L{{Rational(1), Rational(1)}};
  const auto sq = power_form(ring, L, 2);
  REQUIRE(sq.c.size() == 3);
  CHECK(sq.c[0] == Rational(1));
  CHECK(sq.c[1] == Rational(2));
  CHECK(sq.c[2] == Rational(1));

  FormRing ring2(2, 7);
  LinearForm<Rational> x1{{Rational(0), Rational(1), Rational(0)}};
  const auto pow = power_form(ring2, x1, 7);
  const auto idx = ring2.basis(7).index_of({0, 7, 0});
  for (std::size_t i = 0; i < pow.c.size(); ++i)
    CHECK(pow.c[i] == (i == idx ? Rational(1) : Rational(0)));
}

TEST_CASE("power_form satisfies the evaluation identity over a prime field") {
  const std::uint64_t p = kDefaultPrime;
  SplitMix64 rng(2024);
  for (const auto& [m, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}}) {
    FormRing ring(m, d);
    for (int rep = 0; rep < 100; ++rep) {
      const auto L = random_linear_fp(rng, m, p);
      const auto P = random_point_fp(rng, m, p);
      const auto f = power_form(ring, L, d);
      CHECK(evaluate(ring, f, P) == evaluate_linear(L, P).pow(static_cast<std::uint64_t>(d)));
    }
  }
}

TEST_CASE("tangent_form: monomial case, degenerate direction, evaluation identity") {
  FormRing ring(2, 3);
  LinearForm<Rational> x0{{Rational(1), Rational(0), Rational(0)}};
  LinearForm<Rational> x1{{Rational(0), Rational(1), Rational(0)}};
  const auto f = tangent_form(ring, x0, x1, 3);
  const auto idx = ring.basis(3).index_of({2, 1, 0});
  for (std::size_t i = 0; i < f.c.size(); ++i)
    CHECK(f.c[i] == (i == idx ? Rational(1) : Rational(0)));

  // M = L degenerates to the power.
  FormRing ring5(2, 5);
  LinearForm<Rational> L{{Rational(3), Rational(-2), Rational(1)}};
  CHECK(tangent_form(ring5, L, L, 5).c == power_form(ring5, L, 5).c);

  const std::uint64_t p = kDefaultPrime;
  SplitMix64 rng(77);
  for (const auto& [m, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}}) {
    FormRing ring(m, d);
    for (int rep = 0; rep < 100; ++rep) {
      const auto Lf = random_linear_fp(rng, m, p);
      const auto Mf = random_linear_fp(rng, m, p);
      const auto P = random_point_fp(rng, m, p);
      CHECK(evaluate(ring, tangent_form(ring, Lf, Mf, d), P) ==
            evaluate_linear(Lf, P).pow(static_cast<std::uint64_t>(d - 1)) *
                evaluate_linear(Mf, P));
    }
  }
}

TEST_CASE("derivative: hand cases, linearity, commutation, Euler identity") {
  FormRing ring(1, 3);
  // x0^3, alpha = (2,0) -> 6 x0
  DenseForm<Rational> cube = zero_form(ring, 3, Rational(0));
  cube.c[ring.basis(3).index_of({3, 0})] = Rational(1);
  const auto d2 = derivative(ring, cube, {2, 0});
  REQUIRE(d2.degree == 1);
  CHECK(d2.c[ring.basis(1).index_of({1, 0})] == Rational(6));
  CHECK(d2.c[ring.basis(1).index_of({0, 1})] == Rational(0));

  // alpha = 0 is the identity.
  CHECK(derivative(ring, cube, {0, 0}).c == cube.c);

  const std::uint64_t p = kDefaultPrime;
  FormRing ring3(3, 5);
  SplitMix64 rng(5150);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = random_form_fp(rng, ring3, 5, p);

    // Euler: sum_i x_i d_i f = d * f (exactly, over the prime field).
    DenseForm<Fp> euler = zero_form(ring3, 5, Fp::zero(p));
    for (int var = 0; var <= 3; ++var) {
      LinearForm<Fp> xi{std::vector<Fp>(4, Fp::zero(p))};
      xi.c[static_cast<std::size_t>(var)] = Fp::one(p);
      add_scaled(euler, multiply_by_linear(ring3, partial(ring3, f, var), xi), Fp::one(p));
    }
    DenseForm<Fp> scaled = f;
    for (auto& c : scaled.c) c = c * Fp::from_int(5, p);
    CHECK(euler.c == scaled.c);

    // Mixed derivative equals iterated singles, in either order.
    const auto mixed = derivative(ring3, f, {1, 0, 1, 0});
    CHECK(mixed.c == partial(ring3, partial(ring3, f, 0), 2).c);
    CHECK(mixed.c == partial(ring3, partial(ring3, f, 2), 0).c);

    // Linearity.
    const auto g = random_form_fp(rng, ring3, 5, p);
    DenseForm<Fp> sum = f;
    add_scaled(sum, g, Fp::from_int(3, p));
    DenseForm<Fp> expect = derivative(ring3, f, {0, 2, 0, 0});
    add_scaled(expect, derivative(ring3, g, {0, 2, 0, 0}), Fp::from_int(3, p));
    CHECK(derivative(ring3, sum, {0, 2, 0, 0}).c == expect.c);
  }
}

TEST_CASE("Euler identity holds exactly over the rationals") {
  FormRing ring(2, 4);
  SplitMix64 rng(99);
  for (int rep = 0; rep < 10; ++rep) {
    DenseForm<Rational> f = zero_form(ring, 4, Rational(0));
    for (auto& c : f.c) c = Rational(rng.int_in(-50, 50), 1 + rng.int_in(0, 9));
    DenseForm<Rational> euler = zero_form(ring, 4, Rational(0));
    for (int var = 0; var <= 2; ++var) {
      LinearForm<Rational> xi{{Rational(0), Rational(0), Rational(0)}};
      xi.c[static_cast<std::size_t>(var)] = Rational(1);
      add_scaled(euler, multiply_by_linear(ring, partial(ring, f, var), xi), Rational(1));
    }
    DenseForm<Rational> scaled = f;
    for (auto& c : scaled.c) c = c * Rational(4);
    CHECK(euler.c == scaled.c);
  }
}

TEST_CASE("evaluate: unit point, homogeneity, zero of a power") {
  const std::uint64_t p = kDefaultPrime;
  FormRing ring(2, 6);
  DenseForm<Fp> f = zero_form(ring, 6, Fp::zero(p));
  f.c[ring.basis(6).index_of({6, 0, 0})] = Fp::one(p);
  ProjPoint<Fp> e0{{Fp::one(p), Fp::zero(p), Fp::zero(p)}};
  CHECK(evaluate(ring, f, e0) == Fp::one(p));

  SplitMix64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = random_form_fp(rng, ring, 6, p);
    const auto P = random_point_fp(rng, 2, p);
    ProjPoint<Fp> twoP = P;
    for (auto& x : twoP.x) x = x * Fp::from_int(2, p);
    CHECK(evaluate(ring, g, twoP) == evaluate(ring, g, P) * Fp::from_int(64, p));
  }

  // power_form(L, d) vanishes where L does: L = x1 - x2 at (5, 1, 1, ...).
  LinearForm<Fp> L{{Fp::zero(p), Fp::one(p), Fp::from_int(-1, p)}};
  ProjPoint<Fp> P{{Fp::from_int(5, p), Fp::one(p), Fp::one(p)}};
  CHECK(evaluate(ring, power_form(ring, L, 6), P).is_zero());
}

TEST_CASE("substitute_linear composes with evaluation") {
  const std::uint64_t p = kDefaultPrime;
  FormRing ring(2, 4);
  SplitMix64 rng(31);
  const auto f = random_form_fp(rng, ring, 4, p);
  std::vector<LinearForm<Fp>> rows;
  for (int i = 0; i <= 2; ++i) rows.push_back(random_linear_fp(rng, 2, p));
  const auto g = substitute_linear(ring, f, rows);
  for (int rep = 0; rep < 20; ++rep) {
    const auto P = random_point_fp(rng, 2, p);
    ProjPoint<Fp> AP{{evaluate_linear(rows[0], P), evaluate_linear(rows[1], P),
                      evaluate_linear(rows[2], P)}};
    CHECK(evaluate(ring, g, P) == evaluate(ring, f, AP));
  }
}
