#pragma once

#include <cstdint>
#include <vector>

namespace taucert {

// Exponent vector of a monomial in x_0..x_m (length m+1, entries >= 0).
using Exponents = std::vector<int>;

// Exact binomial coefficient; throws std::overflow_error if the value does
// not fit in 64 bits.
std::int64_t binomial(int n, int k);

// Exact multinomial coefficient k! / prod(e_i!).
std::int64_t multinomial(int k, const Exponents& e);

// The numeric bounds attached to a pair (m, d).
struct ParameterTable {
  std::int64_t ambient_dim;  // N = C(m+d, m) - 1
  std::int64_t alpha;        // floor(C(m+d-1, m) / (m+1))
  std::int64_t beta;         // floor(C(m+d-2, m) / (m+1))
};

ParameterTable parameter_table(int m, int d);
std::int64_t expected_dim_tau(int m, int d, int t);    // min{N, t(m+1)-2}
std::int64_t expected_dim_sigma(int m, int d, int t);  // min{N, t(m+1)-1}

// All monomials of a fixed degree in m+1 variables, listed in decreasing
// graded reverse-lexicographic order with x_0 > x_1 > ... > x_m. This order
// is the one canonical order used by every matrix and serialized form.
class MonomialBasis {
 public:
  MonomialBasis(int m, int degree);

  int m() const { return m_; }
  int num_vars() const { return m_ + 1; }
  int degree() const { return degree_; }
  std::size_t size() const { return exps_.size(); }
  const Exponents& exponent(std::size_t i) const { return exps_[i]; }

  // Combinatorial rank of an exponent vector of the basis degree.
  std::size_t index_of(const Exponents& e) const;

 private:
  int m_, degree_;
  std::vector<Exponents> exps_;
};

// Bases for all degrees 0..max_degree over a fixed variable count, plus the
// index shift tables for multiplication by a single variable. Immutable
// after construction and safe to share across threads.
class FormRing {
 public:
  FormRing(int m, int max_degree);

  int m() const { return m_; }
  int num_vars() const { return m_ + 1; }
  int max_degree() const { return max_degree_; }
  const MonomialBasis& basis(int degree) const { return bases_[static_cast<std::size_t>(degree)]; }

  // Index in basis(degree+1) of x_var * (the idx-th monomial of basis(degree)).
  std::size_t shifted(int degree, std::size_t idx, int var) const {
    return shift_[static_cast<std::size_t>(degree)][idx * static_cast<std::size_t>(m_ + 1) +
                                                    static_cast<std::size_t>(var)];
  }

 private:
  int m_, max_degree_;
  std::vector<MonomialBasis> bases_;
  std::vector<std::vector<std::size_t>> shift_;
};

}  // namespace taucert
