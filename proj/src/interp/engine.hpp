#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schemes/schemes.hpp"
#include "support/matrix.hpp"

namespace taucert {

enum class Verdict { kCertified, kInconclusive, kFailed, kObserved };

std::string verdict_string(Verdict v);

// Rows = functionals of a scheme, columns = the degree-d monomial basis.
template <class K>
struct ConditionMatrix {
  Matrix<K> mat;
  std::string scheme;  // component-list spec string
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;  // 0 for non prime-field domains
};

// Matrix whose kernel is H^0(I_S(d)) inside the degree-d coefficient space.
template <class K>
ConditionMatrix<K> assemble(const FormRing& ring, const SchemeUnion<K>& s, int d, const K& context) {
  const auto fns = conditions(ring, s, d);
  const MonomialBasis& basis = ring.basis(d);
  Matrix<K> m(0, basis.size(), field_zero_like(context));
  std::vector<K> row(basis.size(), field_zero_like(context));
  for (const auto& fn : fns) {
    for (std::size_t c = 0; c < basis.size(); ++c) row[c] = functional_on_monomial(fn, basis.exponent(c));
    m.append_row(row);
  }
  ConditionMatrix<K> out{std::move(m), scheme_spec_string(scheme_kinds(s)), 0, 0};
  if constexpr (std::is_same_v<K, Fp>) out.prime = context.p;
  return out;
}

template <class K>
std::size_t rank(const ConditionMatrix<K>& cm) {
  return matrix_rank(cm.mat);
}

struct Cohomology {
  std::int64_t h0;
  std::int64_t h1;
  std::int64_t rank;
};

// h0 = C(m+d,m) - rank, h1 = deg S - rank.
template <class K>
Cohomology cohomology(const FormRing& ring, const SchemeUnion<K>& s, int d, const K& context) {
  const auto cm = assemble(ring, s, d, context);
  const auto r = static_cast<std::int64_t>(rank(cm));
  return {static_cast<std::int64_t>(cm.mat.cols()) - r, scheme_degree(ring.m(), s) - r, r};
}

// Basis of H^0(I_S(d)) as degree-d forms. Throws EmptyKernelError when the
// system has full column rank.
template <class K>
std::vector<DenseForm<K>> kernel_forms(const FormRing& ring, const SchemeUnion<K>& s, int d,
                                       const K& context) {
  const auto cm = assemble(ring, s, d, context);
  auto vectors = kernel_basis(cm.mat);
  if (vectors.empty())
    throw EmptyKernelError("kernel_forms: the system has no nonzero solutions (rank = column count)");
  std::vector<DenseForm<K>> out;
  out.reserve(vectors.size());
  for (auto& v : vectors) out.push_back(DenseForm<K>{d, std::move(v)});
  return out;
}

// Outcome record of a randomized generic-rank certification. A certified
// verdict is monotone evidence: a full-rank specialization over F_p
// lower-bounds the generic characteristic-0 rank.
struct Certificate {
  std::string kind = "generic_rank";
  std::string scheme;
  int m = 0;
  int d = 0;
  std::optional<int> t;
  int trials = 0;
  std::uint64_t prime = 0;            // prime of the successful (or last) trial
  std::vector<std::uint64_t> primes;  // all primes used
  std::vector<std::uint64_t> seeds;   // per executed trial
  std::int64_t degree = 0;
  std::int64_t cols = 0;
  std::int64_t expected_rank = 0;
  std::int64_t achieved_rank = 0;
  Verdict verdict = Verdict::kInconclusive;
};

// Draws `trials` independent random schemes over F_prime and certifies that
// the generic rank equals min(deg S, C(m+d,m)). The first certified trial
// short-circuits; an inconclusive trial is retried over the fallback prime
// before counting against the verdict.
Certificate generic_rank_certificate(const std::vector<ComponentKind>& kinds, int m, int d,
                                     int trials, std::uint64_t seed,
                                     std::uint64_t prime = kDefaultPrime);

}  // namespace taucert
