#include "kronpc/surd.hpp"

#include <mpfr.h>

#include <sstream>
#include <stdexcept>

namespace kronpc {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool is_perfect_square(const mpz_class& v) {
  if (v < 0) return false;
  return mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

mpz_class floor_mul_sqrt(const mpz_class& y, const mpz_class& d) {
  if (y == 0) return 0;
  mpz_class t = y * y * d;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  // d non-square and y != 0 make y*sqrt(d) irrational: s < |y|sqrt(d) < s+1.
  if (y > 0) return s;
  return -s - 1;
}

int sign_with_sqrt(const mpz_class& x, const mpz_class& y, const mpz_class& d) {
  int sx = mpz_sgn(x.get_mpz_t());
  int sy = mpz_sgn(y.get_mpz_t());
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: compare x^2 against y^2*d. Equality would force sqrt(d)
  // rational, which d forbids.
  mpz_class lhs = x * x;
  mpz_class rhs = y * y * d;
  if (lhs == rhs) throw std::logic_error("sign_with_sqrt: d is a perfect square");
  int cmp = lhs > rhs ? 1 : -1;
  // |x| > |y|sqrt(d) -> sign of x dominates, else sign of y.
  return cmp > 0 ? sx : sy;
}

Surd::Surd(mpz_class x, mpz_class y, mpz_class z, mpz_class d)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), d_(std::move(d)) {
  if (z_ == 0) throw std::invalid_argument("Surd: zero denominator");
  if (d_ <= 0 || is_perfect_square(d_)) throw std::invalid_argument("Surd: d must be positive non-square");
  normalize();
}

void Surd::normalize() {
  if (z_ < 0) {
    x_ = -x_;
    y_ = -y_;
    z_ = -z_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x_.get_mpz_t(), y_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z_.get_mpz_t());
  if (g > 1) {
    x_ /= g;
    y_ /= g;
    z_ /= g;
  }
}

int Surd::sign() const { return sign_with_sqrt(x_, y_, d_); }

int Surd::compare(const Surd& o) const {
  if (d_ != o.d_) throw std::invalid_argument("Surd::compare: mismatched fields");
  // this - o = (x1 z2 - x2 z1 + (y1 z2 - y2 z1) sqrt(d)) / (z1 z2), z's > 0.
  return sign_with_sqrt(x_ * o.z_ - o.x_ * z_, y_ * o.z_ - o.y_ * z_, d_);
}

int Surd::compare_rational(const mpq_class& r) const {
  const mpz_class& p = r.get_num();
  const mpz_class& q = r.get_den();
  return sign_with_sqrt(x_ * q - p * z_, y_ * q, d_);
}

bool Surd::equals_rational(const mpq_class& r) const {
  if (y_ != 0) return false;
  return x_ * r.get_den() == r.get_num() * z_;
}

mpz_class Surd::floor() const {
  return floor_div(x_ + floor_mul_sqrt(y_, d_), z_);
}

Surd Surd::negate() const { return Surd(-x_, -y_, z_, d_); }

Surd Surd::abs() const { return sign() >= 0 ? *this : negate(); }

Surd Surd::add(const Surd& o) const {
  if (d_ != o.d_) throw std::invalid_argument("Surd::add: mismatched fields");
  return Surd(x_ * o.z_ + o.x_ * z_, y_ * o.z_ + o.y_ * z_, z_ * o.z_, d_);
}

Surd Surd::sub(const Surd& o) const { return add(o.negate()); }

Surd Surd::mul_int(const mpz_class& k) const { return Surd(x_ * k, y_ * k, z_, d_); }

Surd Surd::sub_int(const mpz_class& k) const { return Surd(x_ - k * z_, y_, z_, d_); }

Surd Surd::sub_rational(const mpq_class& r) const {
  return Surd(x_ * r.get_den() - r.get_num() * z_, y_ * r.get_den(), z_ * r.get_den(), d_);
}

Surd Surd::one_minus() const { return Surd(z_ - x_, -y_, z_, d_); }

Surd Surd::pow_uint(unsigned long e) const {
  mpz_class px = 1, py = 0;  // (px + py sqrt(d)) accumulates the numerator power
  mpz_class bx = x_, by = y_;
  unsigned long k = e;
  while (k > 0) {
    if (k & 1) {
      mpz_class nx = px * bx + py * by * d_;
      mpz_class ny = px * by + py * bx;
      px = nx;
      py = ny;
    }
    k >>= 1;
    if (k > 0) {
      mpz_class nx = bx * bx + by * by * d_;
      mpz_class ny = 2 * bx * by;
      bx = nx;
      by = ny;
    }
  }
  mpz_class pz;
  mpz_pow_ui(pz.get_mpz_t(), z_.get_mpz_t(), e);
  return Surd(px, py, pz, d_);
}

mpq_class Surd::rational_value() const {
  if (y_ != 0) throw std::logic_error("Surd::rational_value on irrational value");
  mpq_class q(x_, z_);
  q.canonicalize();
  return q;
}

double Surd::to_double() const {
  mpfr_t v, t;
  mpfr_init2(v, 128);
  mpfr_init2(t, 128);
  mpfr_set_z(t, d_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(t, t, MPFR_RNDN);
  mpfr_mul_z(t, t, y_.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(v, x_.get_mpz_t(), MPFR_RNDN);
  mpfr_add(v, v, t, MPFR_RNDN);
  mpfr_div_z(v, v, z_.get_mpz_t(), MPFR_RNDN);
  double r = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  mpfr_clear(t);
  return r;
}

std::string Surd::str() const {
  std::ostringstream os;
  os << "(" << x_ << " + " << y_ << "*sqrt(" << d_ << "))/" << z_;
  return os.str();
}

}  // namespace kronpc
