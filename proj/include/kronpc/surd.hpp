#pragma once

#include <gmpxx.h>

#include <string>

namespace kronpc {

// Exact sign of x + y*sqrt(d); d > 0 and not a perfect square.
int sign_with_sqrt(const mpz_class& x, const mpz_class& y, const mpz_class& d);

// Exact value (x + y*sqrt(d)) / z with z > 0 after normalization.
// d is fixed per quadratic field; operations mixing two Surds require equal d.
// Comparisons never fall back to floating point: signs are decided by squaring
// with sign tracking, floors by integer square roots.
class Surd {
 public:
  Surd(mpz_class x, mpz_class y, mpz_class z, mpz_class d);

  const mpz_class& x() const { return x_; }
  const mpz_class& y() const { return y_; }
  const mpz_class& z() const { return z_; }
  const mpz_class& d() const { return d_; }

  int sign() const;
  int compare(const Surd& o) const;
  int compare_rational(const mpq_class& r) const;
  bool equals_rational(const mpq_class& r) const;

  mpz_class floor() const;
  Surd frac() const { return sub_int(floor()); }

  Surd negate() const;
  Surd abs() const;
  Surd add(const Surd& o) const;
  Surd sub(const Surd& o) const;
  Surd mul_int(const mpz_class& k) const;
  Surd sub_int(const mpz_class& k) const;
  Surd sub_rational(const mpq_class& r) const;
  Surd one_minus() const;  // 1 - value
  // (x + y*sqrt(d))^e / z^e via binary exponentiation on the (x, y) pair.
  Surd pow_uint(unsigned long e) const;

  // Rational if and only if y == 0 (d is never a square).
  bool is_rational() const { return y_ == 0; }
  mpq_class rational_value() const;  // requires is_rational()

  double to_double() const;
  std::string str() const;

 private:
  mpz_class x_, y_, z_, d_;
  void normalize();
};

// floor(a / b) for b > 0 (division toward minus infinity).
mpz_class floor_div(const mpz_class& a, const mpz_class& b);

// Largest integer <= y*sqrt(d); y may be negative, d positive non-square.
mpz_class floor_mul_sqrt(const mpz_class& y, const mpz_class& d);

bool is_perfect_square(const mpz_class& v);

}  // namespace kronpc
