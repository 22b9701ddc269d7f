#include "forms/monomials.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace taucert {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i);
    acc /= static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
      throw std::overflow_error("binomial: value exceeds 64 bits");
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t multinomial(int k, const Exponents& e) {
  std::int64_t acc = 1;
  int partial = 0;
  for (int ei : e) {
    partial += ei;
    acc *= binomial(partial, ei);  // stays well inside 64 bits for k <= 20
  }
  if (partial != k) throw std::invalid_argument("multinomial: exponents do not sum to k");
  return acc;
}

ParameterTable parameter_table(int m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("parameter_table: need m >= 1 and d >= 1");
  ParameterTable t;
  t.ambient_dim = binomial(m + d, m) - 1;
  t.alpha = binomial(m + d - 1, m) / (m + 1);
  t.beta = binomial(m + d - 2, m) / (m + 1);
  return t;
}

std::int64_t expected_dim_tau(int m, int d, int t) {
  return std::min(parameter_table(m, d).ambient_dim,
                  static_cast<std::int64_t>(t) * (m + 1) - 2);
}

std::int64_t expected_dim_sigma(int m, int d, int t) {
  return std::min(parameter_table(m, d).ambient_dim,
                  static_cast<std::int64_t>(t) * (m + 1) - 1);
}

namespace {

// Enumerates degree-`deg` monomials in variables x_0..x_mm in decreasing
// grevlex order: ascending exponent of the last variable, recursing on the
// prefix.
void enumerate(int mm, int deg, Exponents& scratch, std::vector<Exponents>& out) {
  if (mm == 0) {
    scratch[0] = deg;
    out.push_back(scratch);
    return;
  }
  for (int last = 0; last <= deg; ++last) {
    scratch[static_cast<std::size_t>(mm)] = last;
    enumerate(mm - 1, deg - last, scratch, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int m, int degree) : m_(m), degree_(degree) {
  if (m < 1 || degree < 0) throw std::invalid_argument("MonomialBasis: need m >= 1, degree >= 0");
  exps_.reserve(static_cast<std::size_t>(binomial(m + degree, m)));
  Exponents scratch(static_cast<std::size_t>(m + 1), 0);
  enumerate(m, degree, scratch, exps_);
}

std::size_t MonomialBasis::index_of(const Exponents& e) const {
  std::size_t idx = 0;
  int deg = degree_;
  for (int var = m_; var >= 1; --var) {
    const int ev = e[static_cast<std::size_t>(var)];
    // Skip the blocks with smaller exponent of x_var.
    for (int s = 0; s < ev; ++s) idx += static_cast<std::size_t>(binomial(deg - s + var - 1, var - 1));
    deg -= ev;
  }
  return idx;
}

FormRing::FormRing(int m, int max_degree) : m_(m), max_degree_(max_degree) {
  bases_.reserve(static_cast<std::size_t>(max_degree + 1));
  for (int deg = 0; deg <= max_degree; ++deg) bases_.emplace_back(m, deg);

  shift_.resize(static_cast<std::size_t>(max_degree));
  for (int deg = 0; deg + 1 <= max_degree; ++deg) {
    const MonomialBasis& lo = bases_[static_cast<std::size_t>(deg)];
    const MonomialBasis& hi = bases_[static_cast<std::size_t>(deg + 1)];
    auto& table = shift_[static_cast<std::size_t>(deg)];
    table.resize(lo.size() * static_cast<std::size_t>(m + 1));
    Exponents e;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      for (int var = 0; var <= m; ++var) {
        e = lo.exponent(i);
        ++e[static_cast<std::size_t>(var)];
        table[i * static_cast<std::size_t>(m + 1) + static_cast<std::size_t>(var)] = hi.index_of(e);
      }
    }
  }
}

}  // namespace taucert
