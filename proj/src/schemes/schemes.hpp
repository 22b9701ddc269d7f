#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "forms/dense_form.hpp"
#include "support/errors.hpp"
#include "support/rng.hpp"

namespace taucert {

enum class ComponentKind { kDouble, kTriple, kQuadruple, kTwoThree };

// kP: the point with its (k-1)-th infinitesimal neighborhood, k in {2,3,4}.
template <class K>
struct FatPoint {
  ProjPoint<K> point;
  int multiplicity;
};

// Z(O,L): the scheme with local ideal q^3 + l^2, where q is the point O and
// l the line through O spanned by the extra direction w. Stored chart-free
// as the pair (O, w).
template <class K>
struct TwoThreePoint {
  ProjPoint<K> origin;
  std::vector<K> direction;

  TwoThreePoint(ProjPoint<K> o, std::vector<K> w) : origin(std::move(o)), direction(std::move(w)) {
    if (!independent(origin.x, direction))
      throw std::invalid_argument("TwoThreePoint: direction must be independent of the point");
  }

  static bool independent(const std::vector<K>& a, const std::vector<K>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const K det = a[i] * b[j] - a[j] * b[i];
        if (!scalar_is_zero(det)) return true;
      }
    return false;
  }
};

template <class K>
using SchemeComponent = std::variant<FatPoint<K>, TwoThreePoint<K>>;

// Disjoint union of fat points and (2,3)-points with pairwise distinct
// supports.
template <class K>
struct SchemeUnion {
  std::vector<SchemeComponent<K>> components;
};

std::int64_t fat_point_degree(int m, int multiplicity);  // C(m+k-1, m)
std::int64_t two_three_degree(int m);                    // 2m+1
std::int64_t component_degree(int m, ComponentKind kind);

template <class K>
std::int64_t scheme_degree(int m, const SchemeUnion<K>& s) {
  std::int64_t deg = 0;
  for (const auto& comp : s.components) {
    if (const auto* fat = std::get_if<FatPoint<K>>(&comp))
      deg += fat_point_degree(m, fat->multiplicity);
    else
      deg += two_three_degree(m);
  }
  return deg;
}

template <class K>
std::vector<ComponentKind> scheme_kinds(const SchemeUnion<K>& s) {
  std::vector<ComponentKind> kinds;
  for (const auto& comp : s.components) {
    if (const auto* fat = std::get_if<FatPoint<K>>(&comp)) {
      kinds.push_back(fat->multiplicity == 2   ? ComponentKind::kDouble
                      : fat->multiplicity == 3 ? ComponentKind::kTriple
                                               : ComponentKind::kQuadruple);
    } else {
      kinds.push_back(ComponentKind::kTwoThree);
    }
  }
  return kinds;
}

// Linear functional on degree-d forms: either a mixed partial d^alpha at a
// point, or the second-order directional pair d_w d_i at a point.
template <class K>
struct Functional {
  ProjPoint<K> at;
  std::variant<Exponents, std::pair<std::vector<K>, int>> spec;
};

// The vanishing conditions a scheme imposes on degree-d forms. For kP all
// order-(k-1) partials at P; for Z(O,L) the m+1 first partials at O plus
// the m+1 functionals d_w d_i at O (rank 2m+1, one Euler dependency).
// Unions containing a (2,3)-point require d >= 3: below that the duality
// with the tangent developable is undefined.
template <class K>
std::vector<Functional<K>> conditions(const FormRing& ring, const SchemeUnion<K>& s, int d) {
  if (d < 1) throw std::invalid_argument("conditions: need d >= 1");
  for (const auto& comp : s.components)
    if (std::holds_alternative<TwoThreePoint<K>>(comp) && d < 3)
      throw std::invalid_argument("conditions: a (2,3)-point needs d >= 3");
  std::vector<Functional<K>> out;
  for (const auto& comp : s.components) {
    if (const auto* fat = std::get_if<FatPoint<K>>(&comp)) {
      const MonomialBasis& orders = ring.basis(fat->multiplicity - 1);
      for (std::size_t i = 0; i < orders.size(); ++i)
        out.push_back({fat->point, orders.exponent(i)});
    } else {
      const auto& zt = std::get<TwoThreePoint<K>>(comp);
      for (int var = 0; var <= ring.m(); ++var) {
        Exponents alpha(static_cast<std::size_t>(ring.m() + 1), 0);
        alpha[static_cast<std::size_t>(var)] = 1;
        out.push_back({zt.origin, std::move(alpha)});
      }
      for (int var = 0; var <= ring.m(); ++var)
        out.push_back({zt.origin, std::make_pair(zt.direction, var)});
    }
  }
  return out;
}

// Value of a functional on the monomial x^beta.
template <class K>
K functional_on_monomial(const Functional<K>& fn, const Exponents& beta) {
  const K context = fn.at.x[0];
  if (const auto* alpha = std::get_if<Exponents>(&fn.spec)) {
    K acc = field_zero_like(context);
    std::int64_t fall = 1;
    for (std::size_t v = 0; v < beta.size(); ++v) {
      if ((*alpha)[v] > beta[v]) return acc;
      for (int s = 0; s < (*alpha)[v]; ++s) fall *= beta[v] - s;
    }
    K term = scalar_from_int(fall, context);
    for (std::size_t v = 0; v < beta.size(); ++v)
      for (int rep = 0; rep < beta[v] - (*alpha)[v]; ++rep) term = term * fn.at.x[v];
    return term;
  }
  const auto& [w, var] = std::get<std::pair<std::vector<K>, int>>(fn.spec);
  K acc = field_zero_like(context);
  Exponents alpha(beta.size(), 0);
  for (int j = 0; j < static_cast<int>(beta.size()); ++j) {
    if (scalar_is_zero(w[static_cast<std::size_t>(j)])) continue;
    std::fill(alpha.begin(), alpha.end(), 0);
    alpha[static_cast<std::size_t>(var)] += 1;
    alpha[static_cast<std::size_t>(j)] += 1;
    bool ok = true;
    std::int64_t fall = 1;
    for (std::size_t v = 0; v < beta.size(); ++v) {
      if (alpha[v] > beta[v]) {
        ok = false;
        break;
      }
      for (int s = 0; s < alpha[v]; ++s) fall *= beta[v] - s;
    }
    if (!ok) continue;
    K term = scalar_from_int(fall, context) * w[static_cast<std::size_t>(j)];
    for (std::size_t v = 0; v < beta.size(); ++v)
      for (int rep = 0; rep < beta[v] - alpha[v]; ++rep) term = term * fn.at.x[v];
    acc = acc + term;
  }
  return acc;
}

// Apply a functional to a whole form (used by exact kernel re-checks).
template <class K>
K apply_functional(const FormRing& ring, const Functional<K>& fn, const DenseForm<K>& f) {
  const MonomialBasis& basis = ring.basis(f.degree);
  K acc = field_zero_like(fn.at.x[0]);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (scalar_is_zero(f.c[i])) continue;
    acc = acc + f.c[i] * functional_on_monomial(fn, basis.exponent(i));
  }
  return acc;
}

// --- random schemes ------------------------------------------------------

template <class K>
K random_scalar(SplitMix64& rng, const K& context) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp::raw(rng.below(context.p), context.p);
  } else if constexpr (std::is_same_v<K, double>) {
    (void)context;
    return 2.0 * rng.unit() - 1.0;
  } else {
    (void)context;
    return K(rng.int_in(-20, 20));
  }
}

template <class K>
ProjPoint<K> random_point(SplitMix64& rng, int m, const K& context) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    ProjPoint<K> p;
    p.x.reserve(static_cast<std::size_t>(m + 1));
    bool nonzero = false;
    for (int i = 0; i <= m; ++i) {
      p.x.push_back(random_scalar(rng, context));
      nonzero = nonzero || !scalar_is_zero(p.x.back());
    }
    if (nonzero) return p;
  }
  throw std::runtime_error("random_point: domain too small to draw a nonzero point");
}

template <class K>
std::vector<K> normalized_rep(const std::vector<K>& x) {
  std::size_t lead = 0;
  while (lead < x.size() && scalar_is_zero(x[lead])) ++lead;
  std::vector<K> out(x.size(), field_zero_like(x[0]));
  const K inv = field_one_like(x[lead]) / x[lead];
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * inv;
  return out;
}

template <class K>
bool same_projective_point(const std::vector<K>& a, const std::vector<K>& b) {
  return normalized_rep(a) == normalized_rep(b);
}

// General union: independent uniform coordinates (prime field) or small
// random integers (rationals), pairwise distinct supports, deterministic
// for a given seed.
template <class K>
SchemeUnion<K> random_scheme(const std::vector<ComponentKind>& kinds, int m, SplitMix64& rng,
                             const K& context) {
  SchemeUnion<K> s;
  std::vector<std::vector<K>> supports;
  for (ComponentKind kind : kinds) {
    ProjPoint<K> p;
    bool fresh = false;
    for (int attempt = 0; attempt < 64 && !fresh; ++attempt) {
      p = random_point(rng, m, context);
      fresh = true;
      for (const auto& q : supports)
        if (same_projective_point(q, p.x)) fresh = false;
    }
    if (!fresh) throw std::runtime_error("random_scheme: could not draw distinct supports");
    supports.push_back(p.x);

    switch (kind) {
      case ComponentKind::kDouble:
        s.components.push_back(FatPoint<K>{std::move(p), 2});
        break;
      case ComponentKind::kTriple:
        s.components.push_back(FatPoint<K>{std::move(p), 3});
        break;
      case ComponentKind::kQuadruple:
        s.components.push_back(FatPoint<K>{std::move(p), 4});
        break;
      case ComponentKind::kTwoThree: {
        for (int attempt = 0; attempt < 64; ++attempt) {
          std::vector<K> w;
          for (int i = 0; i <= m; ++i) w.push_back(random_scalar(rng, context));
          if (TwoThreePoint<K>::independent(p.x, w)) {
            s.components.push_back(TwoThreePoint<K>(std::move(p), std::move(w)));
            break;
          }
          if (attempt == 63)
            throw std::runtime_error("random_scheme: could not draw an independent direction");
        }
        break;
      }
    }
  }
  return s;
}

// --- component-list spec strings ------------------------------------------

// Text form used by the command line and job files: comma-separated tokens
// "2P", "3P", "4P", "Z23", each with an optional repeat suffix "xN",
// e.g. "Z23,2Px7".
std::vector<ComponentKind> parse_scheme_spec(const std::string& text);
std::string scheme_spec_string(const std::vector<ComponentKind>& kinds);

}  // namespace taucert
