#pragma once

#include <gmpxx.h>

#include "kronpc/alpha.hpp"
#include "kronpc/int128.hpp"

namespace kronpc {

// Norm window of half-width eps around 0 on the circle. eps is either an
// exact rational or s/N^beta with rational s, beta (irrational for most beta).
// Carries a certified 128-bit fixed-point enclosure [e_lo, e_hi] of
// eps*2^128 for the scan fast path, and decides boundary cases exactly:
// rational eps against the residue surd directly, power-form eps by raising
// both (positive) sides to the beta-denominator power, which lands the
// comparison back in Z[sqrt(d)].
class EpsWindow {
 public:
  static EpsWindow from_rational(const mpq_class& eps);
  // eps = s / N^beta, s >= 0 rational, beta rational in (0, 1].
  static EpsWindow from_power(const mpq_class& s, u64 N, const mpq_class& beta);

  u128 e_lo() const { return e_lo_; }
  u128 e_hi() const { return e_hi_; }

  // {j*alpha} <= eps, decided exactly.
  bool decide_low(const AlphaCtx& ctx, u64 j) const;
  // {j*alpha} >= 1 - eps, decided exactly.
  bool decide_high(const AlphaCtx& ctx, u64 j) const;
  // ||j*alpha|| <= eps, decided exactly (eps < 1/2 keeps the sides disjoint).
  bool decide_norm(const AlphaCtx& ctx, u64 j) const {
    return decide_low(ctx, j) || decide_high(ctx, j);
  }
  // ||u|| <= eps for a residue surd u in (0, 1).
  bool residue_in_window(const Surd& u) const {
    return surd_le_eps(u) || surd_le_eps(u.one_minus());
  }

  bool is_rational() const { return rational_; }
  const mpq_class& rational_eps() const { return eps_; }
  // Lower bound of eps at 192 fractional bits, for printing.
  mpq_class print_value() const;

  bool is_zero() const;

  bool surd_le_eps(const Surd& u) const;  // u in (0, 1); is u <= eps?

 private:
  EpsWindow() = default;

  bool rational_ = true;
  mpq_class eps_;           // rational form
  mpq_class s_;             // power form: eps = s / N^(p/q)
  mpz_class n_pow_p_;       // N^p
  unsigned long q_ = 1;     // beta denominator
  mpq_class s_pow_q_;       // s^q
  u128 e_lo_ = 0, e_hi_ = 0;
  mpz_class e192_lo_;       // floor(eps * 2^192)
};

enum class NormOrder { Below, Above };

// Exact decision of ||j*alpha|| <= eps for rational eps in (0, 1/2).
// Fixed-point fast path with guarded fallback to the surd comparison.
NormOrder norm_compare(const AlphaCtx& ctx, u64 j, const mpq_class& eps,
                       bool* used_exact = nullptr);

}  // namespace kronpc
