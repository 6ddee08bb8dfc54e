#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "kronpc/int128.hpp"
#include "kronpc/surd.hpp"

namespace kronpc {

class AlphaParseError : public std::runtime_error {
 public:
  AlphaParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Canonical quadratic irrational (a + b*sqrt(d))/c:
//   gcd(a,b,c) = 1, c > 0, d positive non-square, value positive, b nonzero.
class AlphaSpec {
 public:
  static AlphaSpec parse(const std::string& text);
  static AlphaSpec make(mpz_class a, mpz_class b, mpz_class c, mpz_class d,
                        std::string spec_string = "");

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }
  // Input text, echoed verbatim into output records.
  const std::string& spec_string() const { return spec_string_; }

  Surd value() const { return Surd(a_, b_, c_, d_); }

  bool operator==(const AlphaSpec& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }

 private:
  AlphaSpec() = default;
  mpz_class a_, b_, c_, d_;
  std::string spec_string_;
};

// Immutable per-alpha context: the exact surd plus the 128-bit fixed-point
// step used by the scan kernels. walk_at(j) is a certified lower bound of
// {j*alpha}*2^128 with one-sided error < j ulps.
class AlphaCtx {
 public:
  explicit AlphaCtx(AlphaSpec spec);

  const AlphaSpec& spec() const { return spec_; }
  const mpz_class& floor_alpha() const { return floor_alpha_; }
  u128 step() const { return step_; }

  u128 walk_at(u64 j) const { return mul_mod_2_128(step_, j); }

  Surd alpha_surd() const { return spec_.value(); }
  Surd mult_surd(u64 j) const;  // j*alpha
  Surd frac_surd(u64 j) const;  // {j*alpha}, exact residue in [0,1)

 private:
  AlphaSpec spec_;
  mpz_class floor_alpha_;
  u128 step_;
};

}  // namespace kronpc
