#include "kronpc/window.hpp"

#include <cassert>
#include <stdexcept>

namespace kronpc {

namespace {

mpz_class pow2(unsigned bits) { return mpz_class(1) << bits; }

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

EpsWindow EpsWindow::from_rational(const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
  if (eps >= mpq_class(1, 2)) throw std::invalid_argument("eps must be < 1/2");
  EpsWindow w;
  w.rational_ = true;
  w.eps_ = eps;
  mpz_class num = eps.get_num() * pow2(128);
  mpz_class lo = floor_div(num, eps.get_den());
  w.e_lo_ = u128_from_mpz(lo);
  w.e_hi_ = (num % eps.get_den() == 0) ? w.e_lo_ : w.e_lo_ + 1;
  w.e192_lo_ = floor_div(eps.get_num() * pow2(192), eps.get_den());
  return w;
}

EpsWindow EpsWindow::from_power(const mpq_class& s, u64 N, const mpq_class& beta) {
  if (s < 0) throw std::invalid_argument("s must be nonnegative");
  if (beta <= 0 || beta > 1) throw std::invalid_argument("beta must be in (0, 1]");
  if (N < 1) throw std::invalid_argument("N must be positive");

  mpz_class p = beta.get_num();
  mpz_class qz = beta.get_den();
  unsigned long q = mpz_get_ui(qz.get_mpz_t());
  mpz_class n_pow_p;
  mpz_pow_ui(n_pow_p.get_mpz_t(), mpz_from_u128(N).get_mpz_t(),
             mpz_get_ui(p.get_mpz_t()));

  // N^(p/q) rational iff N^p is a perfect q-th power.
  mpz_class root;
  int exactr = mpz_root(root.get_mpz_t(), n_pow_p.get_mpz_t(), q);
  if (exactr != 0) {
    mpq_class eps = s / mpq_class(root);
    eps.canonicalize();
    return from_rational(eps);
  }

  EpsWindow w;
  w.rational_ = false;
  w.s_ = s;
  w.n_pow_p_ = n_pow_p;
  w.q_ = q;
  mpz_class sn_pow, sd_pow;
  mpz_pow_ui(sn_pow.get_mpz_t(), s.get_num().get_mpz_t(), q);
  mpz_pow_ui(sd_pow.get_mpz_t(), s.get_den().get_mpz_t(), q);
  w.s_pow_q_ = mpq_class(sn_pow, sd_pow);
  w.s_pow_q_.canonicalize();

  // Enclose N^(p/q) at 2^k scale: t <= N^(p/q)*2^k < t+1 via the exact
  // integer q-th root of N^p * 2^(k*q).
  constexpr unsigned k = 224;
  mpz_class scaled = n_pow_p << (k * q);
  mpz_class t;
  mpz_root(t.get_mpz_t(), scaled.get_mpz_t(), q);
  // eps*2^128 = s*2^(128+k) / (N^(p/q)*2^k) in [num/(t+1), num/t].
  mpz_class num = s.get_num() * (mpz_class(1) << (128 + k));
  mpz_class lo = floor_div(num, s.get_den() * (t + 1));
  mpz_class hi = ceil_div(num, s.get_den() * t);
  if (hi >= pow2(128)) throw std::invalid_argument("eps must be < 1/2");
  w.e_lo_ = u128_from_mpz(lo);
  w.e_hi_ = u128_from_mpz(hi);
  assert(w.e_hi_ - w.e_lo_ <= 4);  // certified well under the 2^-96 budget
  w.e192_lo_ = floor_div(s.get_num() * (mpz_class(1) << (192 + k)),
                         s.get_den() * (t + 1));
  if (w.e_hi_ >= u128_from_halves(1ull << 63, 0))
    throw std::invalid_argument("eps must be < 1/2");
  return w;
}

bool EpsWindow::is_zero() const { return rational_ && eps_ == 0; }

bool EpsWindow::surd_le_eps(const Surd& u) const {
  if (rational_) {
    int c = u.compare_rational(eps_);
    // Rational eps can never tie an irrational residue.
    assert(c != 0 || u.is_rational());
    return c <= 0;
  }
  if (s_ == 0) return false;
  // u <= s/N^(p/q)  <=>  u^q * N^p <= s^q for positive u.
  Surd lhs = u.pow_uint(q_).mul_int(n_pow_p_);
  return lhs.compare_rational(s_pow_q_) <= 0;
}

bool EpsWindow::decide_low(const AlphaCtx& ctx, u64 j) const {
  return surd_le_eps(ctx.frac_surd(j));
}

bool EpsWindow::decide_high(const AlphaCtx& ctx, u64 j) const {
  return surd_le_eps(ctx.frac_surd(j).one_minus());
}

mpq_class EpsWindow::print_value() const {
  if (rational_) return eps_;
  mpq_class v(e192_lo_, mpz_class(1) << 192);
  v.canonicalize();
  return v;
}

NormOrder norm_compare(const AlphaCtx& ctx, u64 j, const mpq_class& eps,
                       bool* used_exact) {
  if (j < 1) throw std::invalid_argument("norm_compare: j must be >= 1");
  EpsWindow w = EpsWindow::from_rational(eps);
  if (used_exact) *used_exact = false;

  u128 pos = ctx.walk_at(j);
  u128 guard = static_cast<u128>(j) + 1;
  u128 e_lo = w.e_lo(), e_hi = w.e_hi();
  if (guard <= e_lo) {
    if (pos <= e_lo - guard) return NormOrder::Below;
    if (pos >= static_cast<u128>(0) - e_lo) return NormOrder::Below;  // high side hit
  }
  u128 miss_hi = static_cast<u128>(0) - e_hi - guard;
  if (pos > e_hi && pos <= miss_hi) return NormOrder::Above;

  if (used_exact) *used_exact = true;
  return w.decide_norm(ctx, j) ? NormOrder::Below : NormOrder::Above;
}

}  // namespace kronpc
