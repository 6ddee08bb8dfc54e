#include "kronpc/diophantine.hpp"

#include <stdexcept>

namespace kronpc {

namespace {

const mpq_class& phi_clamp() {
  static const mpq_class v = [] {
    mpq_class q(mpz_class((1 << 20) - 1), mpz_class(1 << 20));
    q.canonicalize();
    return q;
  }();
  return v;
}

// Rational lower bound of a positive surd, within 2^-64.
mpq_class certify_lower(const Surd& v) {
  // floor(v * 2^64) / 2^64
  Surd scaled = v.mul_int(mpz_class(1) << 64);
  mpq_class q(scaled.floor(), mpz_class(1) << 64);
  q.canonicalize();
  return q;
}

}  // namespace

mpq_class DiophantineProfile::phi(const mpq_class& q) const {
  if (q <= 0) throw std::invalid_argument("phi: q must be positive");
  mpq_class v = c / q;
  v.canonicalize();
  return v < phi_clamp() ? v : phi_clamp();
}

DiophantineProfile DiophantineProfile::user_supplied(mpq_class c) {
  if (c <= 0) throw std::invalid_argument("profile: c must be positive");
  DiophantineProfile p;
  p.c = c;
  p.c_liminf = std::move(c);
  p.provenance = Provenance::UserSupplied;
  return p;
}

Surd convergent_quality(const AlphaSpec& alpha, const Convergent& conv) {
  // q*(q*alpha - p) = (q*(q*a - p*c) + q^2*b*sqrt(d)) / c
  Surd err(conv.q * (conv.q * alpha.a() - conv.p * alpha.c()),
           conv.q * conv.q * alpha.b(), alpha.c(), alpha.d());
  return err.abs();
}

DiophantineProfile bad_approx_constant(const AlphaSpec& alpha, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("bad_approx_constant: depth must be >= 1");
  ContinuedFraction cf = cf_expand(alpha);
  if (depth < cf.period_length())
    throw std::invalid_argument("bad_approx_constant: depth below period length");

  auto convs = convergents(cf, depth);
  // Tail window: last two full periods (capped to the available range).
  std::size_t tail_len = 2 * cf.period_length();
  if (tail_len > depth) tail_len = depth;
  std::size_t tail_start = depth - tail_len;

  Surd best = convergent_quality(alpha, convs[0]);
  Surd tail_best = convergent_quality(alpha, convs[tail_start]);
  for (std::size_t k = 1; k < depth; ++k) {
    Surd q = convergent_quality(alpha, convs[k]);
    if (q.compare(best) < 0) best = q;
    if (k > tail_start && q.compare(tail_best) < 0) tail_best = q;
  }

  DiophantineProfile p;
  p.c = certify_lower(best);
  p.c_liminf = certify_lower(tail_best);
  p.provenance = DiophantineProfile::Provenance::ComputedFromPeriod;
  p.depth = depth;
  return p;
}

DiophantineProfile bad_approx_constant(const AlphaSpec& alpha) {
  ContinuedFraction cf = cf_expand(alpha);
  return bad_approx_constant(alpha, 3 * cf.period_length() + 10);
}

}  // namespace kronpc
