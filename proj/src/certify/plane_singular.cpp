#include "certify/plane_singular.hpp"

#include <algorithm>
#include <stdexcept>

#include "support/matrix.hpp"

namespace taucert {

FpPoly FpPoly::constant(Fp a) { return FpPoly(std::vector<Fp>{a}); }

FpPoly FpPoly::x_plus(Fp delta) { return FpPoly(std::vector<Fp>{delta, Fp::one(delta.p)}); }

Fp FpPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Fp{};
  return c_[static_cast<std::size_t>(i)];
}

Fp FpPoly::eval(Fp x) const {
  Fp acc = Fp::zero(x.p);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Fp s;
    if (i < a.c_.size()) s += a.c_[i];
    if (i < b.c_.size()) s += b.c_[i];
    c[i] = s;
  }
  return FpPoly(std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Fp s;
    if (i < a.c_.size()) s += a.c_[i];
    if (i < b.c_.size()) s -= b.c_[i];
    c[i] = s;
  }
  return FpPoly(std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fp> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return FpPoly(std::move(c));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return {};
  const Fp inv = leading().inverse();
  std::vector<Fp> c = c_;
  for (auto& x : c) x = x * inv;
  return FpPoly(std::move(c));
}

FpPoly FpPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Fp> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    c[i - 1] = c_[i] * Fp::from_int(static_cast<std::int64_t>(i), c_[i].p);
  return FpPoly(std::move(c));
}

void FpPoly::divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) throw std::invalid_argument("FpPoly: division by zero");
  r = a;
  q = FpPoly{};
  if (a.degree() < b.degree()) return;
  const Fp lead_inv = b.leading().inverse();
  std::vector<Fp> qc(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Fp factor = r.leading() * lead_inv;
    qc[static_cast<std::size_t>(shift)] = factor;
    std::vector<Fp> rc = r.c_;
    for (int i = 0; i <= b.degree(); ++i)
      rc[static_cast<std::size_t>(i + shift)] -= factor * b.c_[static_cast<std::size_t>(i)];
    r = FpPoly(std::move(rc));
  }
  q = FpPoly(std::move(qc));
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  FpPoly::divmod(a, b, q, r);
  return r;
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  FpPoly::divmod(a, b, q, r);
  return q;
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly pow_mod(const FpPoly& base, std::uint64_t e, const FpPoly& mod) {
  FpPoly acc = FpPoly::constant(Fp::one(mod.leading().p));
  FpPoly b = base % mod;
  while (e != 0) {
    if (e & 1) acc = (acc * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return acc;
}

FpPoly squarefree_part(const FpPoly& f) {
  if (f.degree() < 1) return f.monic();
  const FpPoly d = f.derivative();
  if (d.is_zero()) return f.monic();  // cannot happen for deg < p
  return (f / poly_gcd(f, d)).monic();
}

FpPoly rational_root_part(const FpPoly& f, std::uint64_t p) {
  if (f.degree() < 1) return f.monic();
  // gcd(f, x^p - x)
  const FpPoly x(std::vector<Fp>{Fp::zero(p), Fp::one(p)});
  const FpPoly xp = pow_mod(x, p, f);
  return poly_gcd(f, xp - x);
}

std::vector<Fp> linear_roots(const FpPoly& f, SplitMix64& rng) {
  std::vector<Fp> roots;
  if (f.degree() < 1) return roots;
  const std::uint64_t p = f.leading().p;
  if (f.degree() == 1) {
    const FpPoly m = f.monic();
    roots.push_back(-m.coeff(0));
    return roots;
  }
  // Strip a root at zero first so random shifts stay simple.
  if (f.coeff(0).is_zero()) {
    roots.push_back(Fp::zero(p));
    const FpPoly x(std::vector<Fp>{Fp::zero(p), Fp::one(p)});
    for (Fp r : linear_roots(f / x, rng)) roots.push_back(r);
    return roots;
  }
  for (int attempt = 0; attempt < 128; ++attempt) {
    const Fp delta = Fp::raw(rng.below(p), p);
    const FpPoly h = pow_mod(FpPoly::x_plus(delta), (p - 1) / 2, f) -
                     FpPoly::constant(Fp::one(p));
    const FpPoly g = poly_gcd(h, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      for (Fp r : linear_roots(g, rng)) roots.push_back(r);
      for (Fp r : linear_roots(f / g, rng)) roots.push_back(r);
      return roots;
    }
  }
  throw std::runtime_error("linear_roots: equal-degree splitting failed to make progress");
}

Fp sylvester_resultant(const FpPoly& f, const FpPoly& g, std::uint64_t p) {
  const int n = f.degree(), m = g.degree();
  if (n < 0 || m < 0) return Fp::zero(p);
  if (n == 0) return f.coeff(0).pow(static_cast<std::uint64_t>(m));
  if (m == 0) return g.coeff(0).pow(static_cast<std::uint64_t>(n));
  const int size = n + m;
  Matrix<Fp> s(static_cast<std::size_t>(size), static_cast<std::size_t>(size), Fp::zero(p));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      s.at(static_cast<std::size_t>(row), static_cast<std::size_t>(row + k)) = f.coeff(n - k);
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k)
      s.at(static_cast<std::size_t>(m + row), static_cast<std::size_t>(row + k)) = g.coeff(m - k);

  // Determinant by elimination.
  Fp det = Fp::one(p);
  for (std::size_t col = 0; col < static_cast<std::size_t>(size); ++col) {
    std::size_t pivot = col;
    while (pivot < static_cast<std::size_t>(size) && s.at(pivot, col).is_zero()) ++pivot;
    if (pivot == static_cast<std::size_t>(size)) return Fp::zero(p);
    if (pivot != col) {
      s.swap_rows(pivot, col);
      det = -det;
    }
    det = det * s.at(col, col);
    const Fp inv = s.at(col, col).inverse();
    for (std::size_t i = col + 1; i < static_cast<std::size_t>(size); ++i) {
      if (s.at(i, col).is_zero()) continue;
      const Fp factor = s.at(i, col) * inv;
      for (std::size_t j = col; j < static_cast<std::size_t>(size); ++j)
        s.at(i, j) -= factor * s.at(col, j);
    }
  }
  return det;
}

FpPoly interpolate(const std::vector<Fp>& xs, const std::vector<Fp>& ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("interpolate: bad node count");
  const std::uint64_t p = xs[0].p;
  // Newton's divided differences.
  std::vector<Fp> coef = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  }
  FpPoly acc = FpPoly::constant(coef[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    const FpPoly shift(std::vector<Fp>{-xs[i], Fp::one(p)});
    acc = acc * shift + FpPoly::constant(coef[i]);
  }
  return acc;
}

std::array<std::uint64_t, 3> normalize_plane_point(const std::array<Fp, 3>& x) {
  std::size_t lead = 0;
  while (lead < 3 && x[lead].is_zero()) ++lead;
  if (lead == 3) throw std::invalid_argument("normalize_plane_point: zero vector");
  const Fp inv = x[lead].inverse();
  return {(x[0] * inv).v, (x[1] * inv).v, (x[2] * inv).v};
}

namespace {

// Univariate specialization h(x2) = g(x0=1, x1=u, x2) of a trivariate form.
FpPoly specialize(const FormRing& ring, const DenseForm<Fp>& g, Fp u) {
  const MonomialBasis& basis = ring.basis(g.degree);
  const std::uint64_t p = u.p;
  std::vector<Fp> c(static_cast<std::size_t>(g.degree + 1), Fp::zero(p));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (g.c[i].is_zero()) continue;
    const Exponents& e = basis.exponent(i);
    Fp term = g.c[i];
    for (int rep = 0; rep < e[1]; ++rep) term = term * u;
    c[static_cast<std::size_t>(e[2])] += term;
  }
  return FpPoly(std::move(c));
}

struct Frame {
  std::vector<LinearForm<Fp>> rows;     // substitution x -> A x
  std::array<std::array<Fp, 3>, 3> a;   // the matrix A itself
};

Frame random_frame(SplitMix64& rng, std::uint64_t p) {
  Frame f;
  while (true) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Fp::raw(rng.below(p), p);
    // det != 0
    const auto& a = f.a;
    Fp det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (!det.is_zero()) break;
  }
  f.rows.clear();
  for (int i = 0; i < 3; ++i) {
    LinearForm<Fp> row;
    for (int j = 0; j < 3; ++j) row.c.push_back(f.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    f.rows.push_back(std::move(row));
  }
  return f;
}

std::array<Fp, 3> apply_frame(const Frame& f, const std::array<Fp, 3>& y) {
  std::array<Fp, 3> out{};
  for (int i = 0; i < 3; ++i) {
    Fp acc;
    for (int j = 0; j < 3; ++j)
      acc += f.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace

PlaneSingularLocus enumerate_plane_singular(const FormRing& ring, const DenseForm<Fp>& f,
                                            SplitMix64& rng, int max_attempts) {
  if (ring.m() != 2) throw std::invalid_argument("enumerate_plane_singular: needs m = 2");
  const std::uint64_t p = f.c[0].p;
  const int d = f.degree;
  PlaneSingularLocus result;
  bool saw_irrational = false;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ++result.attempts;
    const Frame frame = random_frame(rng, p);
    const DenseForm<Fp> g = substitute_linear(ring, f, frame.rows);
    const std::array<DenseForm<Fp>, 3> parts{partial(ring, g, 0), partial(ring, g, 1),
                                             partial(ring, g, 2)};

    // Leading x2-coefficients of the partials must be nonzero constants so
    // resultants specialize cleanly.
    bool frame_ok = true;
    for (const auto& gp : parts) {
      const auto idx = ring.basis(d - 1).index_of({0, 0, d - 1});
      if (gp.c[idx].is_zero()) frame_ok = false;
    }
    if (!frame_ok) continue;

    // Shadows on the (x0:x1) line: interpolate res_{x2} of two pairs.
    const int res_deg = (d - 1) * (d - 1);
    std::vector<Fp> xs, ya, yb;
    for (int j = 0; j <= res_deg; ++j) {
      const Fp u = Fp::from_int(j, p);
      xs.push_back(u);
      const FpPoly h0 = specialize(ring, parts[0], u);
      const FpPoly h1 = specialize(ring, parts[1], u);
      const FpPoly h2 = specialize(ring, parts[2], u);
      ya.push_back(sylvester_resultant(h0, h1, p));
      yb.push_back(sylvester_resultant(h0, h2, p));
    }
    const FpPoly ra = interpolate(xs, ya);
    const FpPoly rb = interpolate(xs, yb);
    // Degree drop means a common zero with x0 = 0 slipped out of the chart,
    // or the partials share a component; try another frame.
    if (ra.degree() != res_deg || rb.degree() != res_deg) continue;

    const FpPoly shadows = squarefree_part(poly_gcd(ra, rb));
    const FpPoly split = rational_root_part(shadows, p);
    if (split.degree() != shadows.degree()) {
      // A candidate shadow is not defined over F_p. Either a spurious
      // alignment of the two resultants or a genuinely irrational singular
      // point; a new frame resolves the former.
      saw_irrational = true;
      continue;
    }

    std::vector<std::array<std::uint64_t, 3>> found;
    bool clean = true;
    for (Fp u0 : linear_roots(split, rng)) {
      FpPoly h = poly_gcd(poly_gcd(specialize(ring, parts[0], u0), specialize(ring, parts[1], u0)),
                          specialize(ring, parts[2], u0));
      if (h.degree() < 1) continue;  // shadow of a spurious resultant alignment
      const FpPoly hf = squarefree_part(h);
      const FpPoly hsplit = rational_root_part(hf, p);
      if (hsplit.degree() != hf.degree()) {
        saw_irrational = true;
        clean = false;
        break;
      }
      for (Fp c : linear_roots(hsplit, rng)) {
        const std::array<Fp, 3> point_g{Fp::one(p), u0, c};
        found.push_back(normalize_plane_point(apply_frame(frame, point_g)));
      }
    }
    if (!clean) continue;

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    result.status = SingStatus::kOk;
    result.points = std::move(found);
    return result;
  }

  result.status = saw_irrational ? SingStatus::kIrrational : SingStatus::kDegenerate;
  return result;
}

}  // namespace taucert
