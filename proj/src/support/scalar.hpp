#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <type_traits>

#include "support/fp64.hpp"

namespace taucert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Field-context helpers so generic code can mint constants compatible with
// an existing element (Fp needs the modulus, everything else does not).
template <class K>
K field_zero_like(const K& sample) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp::zero(sample.p);
  } else {
    (void)sample;
    return K(0);
  }
}

template <class K>
K field_one_like(const K& sample) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp::one(sample.p);
  } else {
    (void)sample;
    return K(1);
  }
}

template <class K>
K scalar_from_int(std::int64_t n, const K& sample) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp::from_int(n, sample.p);
  } else if constexpr (std::is_same_v<K, double>) {
    (void)sample;
    return static_cast<double>(n);
  } else {
    (void)sample;
    return K(n);
  }
}

template <class K>
bool scalar_is_zero(const K& x) {
  if constexpr (std::is_same_v<K, Fp>) {
    return x.is_zero();
  } else {
    return x == K(0);
  }
}

}  // namespace taucert
