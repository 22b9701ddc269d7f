#pragma once

#include <cassert>
#include <cstdint>

namespace taucert {

// Default certification prime (62 bits) and the fallback prime tried
// automatically when a trial over the default prime is inconclusive.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;   // 2^62 - 57
inline constexpr std::uint64_t kFallbackPrime = 4611686018427387817ULL;  // 2^62 - 87

// Element of F_p, p an odd prime < 2^63. Each element carries its modulus;
// a default-constructed element is the zero of an unspecified field and
// combines with operands of any modulus.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

  static Fp raw(std::uint64_t reduced, std::uint64_t prime) {
    Fp r;
    r.v = reduced;
    r.p = prime;
    return r;
  }
  static Fp zero(std::uint64_t prime) { return raw(0, prime); }
  static Fp one(std::uint64_t prime) { return raw(1, prime); }
  static Fp from_int(std::int64_t n, std::uint64_t prime) {
    std::int64_t r = n % static_cast<std::int64_t>(prime);
    if (r < 0) r += static_cast<std::int64_t>(prime);
    return {static_cast<std::uint64_t>(r), prime};
  }

  bool is_zero() const { return v == 0; }

  friend std::uint64_t merged_modulus(const Fp& a, const Fp& b) {
    assert(a.p == 0 || b.p == 0 || a.p == b.p);
    return a.p != 0 ? a.p : b.p;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t p = merged_modulus(a, b);
    if (p == 0) return {};
    std::uint64_t s = a.v + b.v;
    if (s >= p) s -= p;
    return raw(s, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t p = merged_modulus(a, b);
    if (p == 0) return {};
    std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + p - b.v;
    return raw(s, p);
  }
  friend Fp operator-(const Fp& a) {
    if (a.p == 0 || a.v == 0) return a;
    return raw(a.p - a.v, a.p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t p = merged_modulus(a, b);
    if (p == 0) return {};
    auto prod = static_cast<unsigned __int128>(a.v) * b.v;
    return raw(static_cast<std::uint64_t>(prod % p), p);
  }

  Fp pow(std::uint64_t e) const {
    assert(p != 0);
    Fp base = *this, acc = one(p);
    while (e != 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }
  Fp inverse() const {
    assert(p != 0 && v != 0);
    return pow(p - 2);
  }

  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.v != b.v) return false;
    return a.p == b.p || a.p == 0 || b.p == 0;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

}  // namespace taucert
