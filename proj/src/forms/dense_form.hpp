#pragma once

#include <stdexcept>
#include <vector>

#include "forms/monomials.hpp"
#include "support/scalar.hpp"

namespace taucert {

// Homogeneous form of the stated degree, coefficients in the canonical
// monomial order of MonomialBasis. A nonzero degree-d form doubles as a
// point of P^N.
template <class K>
struct DenseForm {
  int degree = 0;
  std::vector<K> c;
};

template <class K>
struct LinearForm {
  std::vector<K> c;  // length m+1
};

template <class K>
struct ProjPoint {
  std::vector<K> x;  // length m+1, not all zero; equality up to scale
};

template <class K>
DenseForm<K> zero_form(const FormRing& ring, int degree, const K& context) {
  return {degree, std::vector<K>(ring.basis(degree).size(), field_zero_like(context))};
}

template <class K>
void add_scaled(DenseForm<K>& acc, const DenseForm<K>& f, const K& s) {
  if (acc.degree != f.degree) throw std::invalid_argument("add_scaled: degree mismatch");
  for (std::size_t i = 0; i < acc.c.size(); ++i) acc.c[i] = acc.c[i] + s * f.c[i];
}

// Coefficients of L^k by the multinomial theorem.
template <class K>
DenseForm<K> power_form(const FormRing& ring, const LinearForm<K>& L, int k) {
  if (k < 0) throw std::invalid_argument("power_form: negative exponent");
  const MonomialBasis& basis = ring.basis(k);
  DenseForm<K> out = zero_form(ring, k, L.c[0]);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Exponents& e = basis.exponent(i);
    K term = scalar_from_int(multinomial(k, e), L.c[0]);
    for (int var = 0; var <= ring.m(); ++var)
      for (int rep = 0; rep < e[static_cast<std::size_t>(var)]; ++rep)
        term = term * L.c[static_cast<std::size_t>(var)];
    out.c[i] = term;
  }
  return out;
}

template <class K>
DenseForm<K> multiply_by_linear(const FormRing& ring, const DenseForm<K>& f, const LinearForm<K>& L) {
  DenseForm<K> out = zero_form(ring, f.degree + 1, L.c[0]);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (scalar_is_zero(f.c[i])) continue;
    for (int var = 0; var <= ring.m(); ++var) {
      const std::size_t j = ring.shifted(f.degree, i, var);
      out.c[j] = out.c[j] + f.c[i] * L.c[static_cast<std::size_t>(var)];
    }
  }
  return out;
}

// L^{d-1} * M, the form attached to a tangent direction of the Veronese.
template <class K>
DenseForm<K> tangent_form(const FormRing& ring, const LinearForm<K>& L, const LinearForm<K>& M, int d) {
  if (d < 2) throw std::invalid_argument("tangent_form: need d >= 2");
  return multiply_by_linear(ring, power_form(ring, L, d - 1), M);
}

namespace detail {
inline std::int64_t falling_product(const Exponents& from, const Exponents& by) {
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (int s = 0; s < by[i]; ++s) acc *= from[i] - s;
  }
  return acc;
}
}  // namespace detail

// Mixed partial derivative d^alpha f.
template <class K>
DenseForm<K> derivative(const FormRing& ring, const DenseForm<K>& f, const Exponents& alpha) {
  int order = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("derivative: negative order");
    order += a;
  }
  if (order > f.degree) throw std::invalid_argument("derivative: order exceeds degree");
  const int out_deg = f.degree - order;
  const MonomialBasis& src = ring.basis(f.degree);
  const MonomialBasis& dst = ring.basis(out_deg);
  const K context = f.c.empty() ? K{} : f.c[0];
  DenseForm<K> out = zero_form(ring, out_deg, context);
  Exponents e(alpha.size());
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const Exponents& gamma = dst.exponent(j);
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = gamma[v] + alpha[v];
    const std::size_t i = src.index_of(e);
    out.c[j] = scalar_from_int(detail::falling_product(e, alpha), f.c[i]) * f.c[i];
  }
  return out;
}

template <class K>
DenseForm<K> partial(const FormRing& ring, const DenseForm<K>& f, int var) {
  Exponents alpha(static_cast<std::size_t>(ring.m() + 1), 0);
  alpha[static_cast<std::size_t>(var)] = 1;
  return derivative(ring, f, alpha);
}

// Directional derivative sum_i w_i d/dx_i f.
template <class K>
DenseForm<K> dir_derivative(const FormRing& ring, const DenseForm<K>& f, const std::vector<K>& w) {
  DenseForm<K> out = zero_form(ring, f.degree - 1, w[0]);
  for (int var = 0; var <= ring.m(); ++var) {
    if (scalar_is_zero(w[static_cast<std::size_t>(var)])) continue;
    add_scaled(out, partial(ring, f, var), w[static_cast<std::size_t>(var)]);
  }
  return out;
}

template <class K>
K evaluate_linear(const LinearForm<K>& L, const ProjPoint<K>& P) {
  K acc = field_zero_like(L.c[0]);
  for (std::size_t i = 0; i < L.c.size(); ++i) acc = acc + L.c[i] * P.x[i];
  return acc;
}

template <class K>
K evaluate(const FormRing& ring, const DenseForm<K>& f, const ProjPoint<K>& P) {
  const MonomialBasis& basis = ring.basis(f.degree);
  K acc = field_zero_like(P.x[0]);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (scalar_is_zero(f.c[i])) continue;
    K term = f.c[i];
    const Exponents& e = basis.exponent(i);
    for (std::size_t v = 0; v < e.size(); ++v)
      for (int rep = 0; rep < e[v]; ++rep) term = term * P.x[v];
    acc = acc + term;
  }
  return acc;
}

// f(A x) for a linear substitution given by its rows: variable x_i of f is
// replaced by the linear form rows[i].
template <class K>
DenseForm<K> substitute_linear(const FormRing& ring, const DenseForm<K>& f,
                               const std::vector<LinearForm<K>>& rows) {
  const MonomialBasis& basis = ring.basis(f.degree);
  const K context = rows[0].c[0];
  DenseForm<K> out = zero_form(ring, f.degree, context);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (scalar_is_zero(f.c[i])) continue;
    DenseForm<K> prod{0, {field_one_like(context)}};
    const Exponents& e = basis.exponent(i);
    for (std::size_t v = 0; v < e.size(); ++v)
      for (int rep = 0; rep < e[v]; ++rep) prod = multiply_by_linear(ring, prod, rows[v]);
    add_scaled(out, prod, f.c[i]);
  }
  return out;
}

}  // namespace taucert
