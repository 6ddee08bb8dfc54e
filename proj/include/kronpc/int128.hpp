#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace kronpc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u128 u128_from_halves(u64 hi, u64 lo) {
  return (static_cast<u128>(hi) << 64) | lo;
}

constexpr u64 u128_lo(u128 v) { return static_cast<u64>(v); }
constexpr u64 u128_hi(u128 v) { return static_cast<u64>(v >> 64); }

// Low 128 bits of u * j. Wraparound is circle arithmetic: the walk lives on
// [0,1) scaled by 2^128.
inline u128 mul_mod_2_128(u128 u, u64 j) {
  u128 lo = static_cast<u128>(u128_lo(u)) * j;
  u128 hi = static_cast<u128>(u128_hi(u)) * j;
  return lo + (hi << 64);
}

inline mpz_class mpz_from_u128(u128 v) {
  mpz_class r = u128_hi(v);
  r <<= 64;
  r += u128_lo(v);
  return r;
}

// Value must fit in 128 bits and be nonnegative.
inline u128 u128_from_mpz(const mpz_class& z) {
  mpz_class lo = z & mpz_class{0xffffffffffffffffUL};
  mpz_class hi = z >> 64;
  return u128_from_halves(mpz_get_ui(hi.get_mpz_t()), mpz_get_ui(lo.get_mpz_t()));
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

}  // namespace kronpc
