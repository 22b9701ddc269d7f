#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certify/plane_singular.hpp"
#include "interp/engine.hpp"
#include "support/errors.hpp"

namespace taucert {

// --- Hessian helpers -------------------------------------------------------

// The full (m+1)x(m+1) projective Hessian (d_i d_j F)(P).
Matrix<Fp> hessian_at(const FormRing& ring, const DenseForm<Fp>& f, const ProjPoint<Fp>& point);

std::size_t hessian_rank_projective(const FormRing& ring, const DenseForm<Fp>& f,
                                    const ProjPoint<Fp>& point);

// Rank of the m x m affine-chart Hessian at a singular point (delete the row
// and column of the first nonzero coordinate). Agrees with the projective
// rank at singular points and is kept as a cross-check.
std::size_t hessian_rank_chart(const FormRing& ring, const DenseForm<Fp>& f,
                               const ProjPoint<Fp>& point);

// --- lemma-level certificates ----------------------------------------------

// h^1-vanishing for a general union of i triple and alpha-i double points,
// i = 1, 2. Hypotheses: m >= 2, d >= 5, and d >= 6 when m <= 4.
struct H1TriplesReport {
  int m = 0, d = 0;
  std::vector<Certificate> cases;  // i = 1, then i = 2
  Verdict verdict = Verdict::kInconclusive;
};
H1TriplesReport certify_h1_triples(int m, int d, int trials, std::uint64_t seed,
                                   std::uint64_t prime = kDefaultPrime);

// h^1-vanishing for one quadruple point plus beta-1 double points.
// Hypotheses: m >= 2, d >= 6, and d >= 7 when m <= 4.
Certificate certify_h1_quadruple(int m, int d, int trials, std::uint64_t seed,
                                 std::uint64_t prime = kDefaultPrime);

// Planar form of the non-weak-defectivity statement for the triple-point
// system: the scheme 3O u 2O_1 u ... u 2O_{t-2} imposes independent
// conditions and a general member of its linear system has an ordinary
// double point at each O_i. Hypotheses: m >= 2, d >= 5 (d >= 6 when m <= 4),
// 3 <= t <= alpha.
struct WeakContactReport {
  int m = 0, d = 0, t = 0;
  Certificate rank_cert;
  std::vector<std::int64_t> hessian_ranks;  // at O_1..O_{t-2}
  bool hessian_ok = false;
  Verdict verdict = Verdict::kInconclusive;
};
WeakContactReport certify_weak_3O(int m, int d, int t, int trials, std::uint64_t seed,
                                  std::uint64_t prime = kDefaultPrime);

// --- the drip certificate ----------------------------------------------------

struct NodeCheck {
  std::int64_t hessian_rank = -1;
  bool ok = false;
};

struct OMultiplicity {
  std::int64_t hessian_rank = -1;  // must be m-1
  bool kernel_contains_point = false;
  bool kernel_contains_direction = false;
  std::uint64_t third_order_value = 0;  // d_w^3 F at O, as a residue
  bool third_order_nonzero = false;
  bool ok = false;
};

struct DripReport {
  int m = 0, d = 0, t = 0;
  bool theorem_range = true;
  int trials = 0;
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> seeds;  // per executed trial
  std::int64_t expected_rank = 0;    // t(m+1) - 1
  std::int64_t achieved_rank = 0;
  bool rank_ok = false;
  std::vector<NodeCheck> node_checks;  // per P_i
  OMultiplicity o_multiplicity;
  bool contact_line_ok = false;
  // m = 2 only: complete singular-locus enumeration.
  std::optional<std::vector<std::string>> sing_enumeration;
  std::optional<bool> sing_ok;
  Verdict verdict = Verdict::kInconclusive;
};

// Certifies that tau(X,t) is not drip defective at seeded random data:
// rank of Z(O,L) u 2P_1 u ... u 2P_{t-2} equals t(m+1)-1, a general member
// of the system has an ordinary node at each P_i, multiplicity exactly 3
// along the line at O, is tangent along the contact line, and (m = 2) is
// singular only at {P_1,...,P_{t-2},O}. Hypotheses: m >= 2, d >= 6 (d >= 7
// when m <= 4), 3 <= t <= beta+1; larger t runs only with
// allow_out_of_range and reports "observed" instead of "certified".
DripReport certify_drip(int m, int d, int t, int trials, std::uint64_t seed,
                        std::uint64_t prime = kDefaultPrime, bool allow_out_of_range = false);

// Formats a point for reports: "a:b:c" with normalized coordinates.
std::string format_point(const std::array<std::uint64_t, 3>& x);

}  // namespace taucert
