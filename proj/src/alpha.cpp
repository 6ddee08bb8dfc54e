#include "kronpc/alpha.hpp"

#include <cctype>

namespace kronpc {

namespace {

// Signed decimal integer; advances pos past the token.
mpz_class parse_int(const std::string& s, std::size_t& pos, const char* what) {
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  std::size_t digits_start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits_start)
    throw AlphaParseError(std::string("expected integer for ") + what, start);
  return mpz_class(s.substr(start, pos - start));
}

void expect(const std::string& s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c)
    throw AlphaParseError(std::string("expected '") + c + "'", pos);
  ++pos;
}

}  // namespace

AlphaSpec AlphaSpec::make(mpz_class a, mpz_class b, mpz_class c, mpz_class d,
                          std::string spec_string) {
  if (b == 0) throw std::invalid_argument("alpha: b must be nonzero (value would be rational)");
  if (c == 0) throw std::invalid_argument("alpha: c must be nonzero");
  if (d <= 0) throw std::invalid_argument("alpha: d must be positive");
  if (is_perfect_square(d))
    throw std::invalid_argument("alpha: d is a perfect square (value would be rational)");
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  if (sign_with_sqrt(a, b, d) <= 0)
    throw std::invalid_argument("alpha: value must be positive");
  AlphaSpec spec;
  spec.a_ = std::move(a);
  spec.b_ = std::move(b);
  spec.c_ = std::move(c);
  spec.d_ = std::move(d);
  spec.spec_string_ = std::move(spec_string);
  return spec;
}

AlphaSpec AlphaSpec::parse(const std::string& text) {
  if (text == "golden") return make(1, 1, 2, 5, text);
  if (text == "sqrt2") return make(0, 1, 1, 2, text);
  if (text == "sqrt3") return make(0, 1, 1, 3, text);
  if (text == "silver") return make(1, 1, 1, 2, text);
  const std::string prefix = "quad:";
  if (text.rfind(prefix, 0) != 0)
    throw AlphaParseError("expected preset name (golden|sqrt2|sqrt3|silver) or quad:a,b,c,d", 0);
  std::size_t pos = prefix.size();
  mpz_class a = parse_int(text, pos, "a");
  expect(text, pos, ',');
  mpz_class b = parse_int(text, pos, "b");
  expect(text, pos, ',');
  mpz_class c = parse_int(text, pos, "c");
  expect(text, pos, ',');
  mpz_class d = parse_int(text, pos, "d");
  if (pos != text.size()) throw AlphaParseError("trailing characters", pos);
  try {
    return make(std::move(a), std::move(b), std::move(c), std::move(d), text);
  } catch (const std::invalid_argument& e) {
    throw AlphaParseError(e.what(), prefix.size());
  }
}

AlphaCtx::AlphaCtx(AlphaSpec spec) : spec_(std::move(spec)) {
  Surd alpha = spec_.value();
  floor_alpha_ = alpha.floor();
  // floor({alpha} * 2^128) = floor(alpha * 2^128) - floor(alpha) * 2^128.
  mpz_class two128 = mpz_class(1) << 128;
  mpz_class scaled_floor =
      floor_div(spec_.a() * two128 + floor_mul_sqrt(spec_.b() * two128, spec_.d()), spec_.c());
  mpz_class frac_scaled = scaled_floor - floor_alpha_ * two128;
  step_ = u128_from_mpz(frac_scaled);
}

Surd AlphaCtx::mult_surd(u64 j) const {
  mpz_class jz = mpz_from_u128(j);
  return Surd(spec_.a() * jz, spec_.b() * jz, spec_.c(), spec_.d());
}

Surd AlphaCtx::frac_surd(u64 j) const {
  Surd m = mult_surd(j);
  return m.sub_int(m.floor());
}

}  // namespace kronpc
