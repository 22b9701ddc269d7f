#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "forms/dense_form.hpp"
#include "support/fp64.hpp"
#include "support/rng.hpp"

namespace taucert {

// Dense univariate polynomial over F_p; coefficient of x^i at index i,
// trailing zeros trimmed, the zero polynomial has degree -1.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { trim(); }

  static FpPoly constant(Fp a);
  static FpPoly x_plus(Fp delta);  // x + delta

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fp>& coeffs() const { return c_; }
  Fp coeff(int i) const;
  Fp leading() const { return c_.back(); }

  Fp eval(Fp x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);

  FpPoly monic() const;
  FpPoly derivative() const;

  // Quotient and remainder by a nonzero divisor.
  static void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b);

 private:
  void trim();
  std::vector<Fp> c_;
};

FpPoly poly_gcd(FpPoly a, FpPoly b);             // monic gcd
FpPoly pow_mod(const FpPoly& base, std::uint64_t e, const FpPoly& mod);
FpPoly squarefree_part(const FpPoly& f);

// Product of the distinct degree-1 factors: gcd(f, x^p - x).
FpPoly rational_root_part(const FpPoly& f, std::uint64_t p);

// All roots in F_p of a squarefree polynomial that splits into linear
// factors (equal-degree splitting with random shifts).
std::vector<Fp> linear_roots(const FpPoly& f, SplitMix64& rng);

// Resultant of two univariate polynomials via the Sylvester matrix.
Fp sylvester_resultant(const FpPoly& f, const FpPoly& g, std::uint64_t p);

// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
FpPoly interpolate(const std::vector<Fp>& xs, const std::vector<Fp>& ys);

// --- singular locus of a plane curve -------------------------------------

enum class SingStatus {
  kOk,           // complete enumeration, all singular points rational
  kDegenerate,   // no nondegenerate coordinate frame found (retries exhausted)
  kIrrational,   // persistent candidate locus not defined over F_p
};

struct PlaneSingularLocus {
  SingStatus status = SingStatus::kDegenerate;
  // Normalized projective representatives (first nonzero coordinate 1).
  std::vector<std::array<std::uint64_t, 3>> points;
  int attempts = 0;
};

// Complete enumeration of Sing{F = 0} in P^2 over the algebraic closure,
// by eliminating one variable from the three partials with resultants in a
// random coordinate frame. Reports kIrrational instead of certifying when
// a candidate component fails to split over F_p.
PlaneSingularLocus enumerate_plane_singular(const FormRing& ring, const DenseForm<Fp>& f,
                                            SplitMix64& rng, int max_attempts = 4);

// Canonical representative of a projective point over F_p.
std::array<std::uint64_t, 3> normalize_plane_point(const std::array<Fp, 3>& x);

}  // namespace taucert
