#include "kronpc/cf.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace kronpc {

namespace {

// floor((P + sqrt(D))/Q) for nonzero Q of either sign, D positive non-square.
mpz_class surd_floor(const mpz_class& P, const mpz_class& D, const mpz_class& Q) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
  if (Q > 0) return floor_div(P + s, Q);
  // Value = -(P + sqrt(D))/|Q|; the argument is irrational so ceil = floor + 1.
  return -floor_div(P + s, -Q) - 1;
}

}  // namespace

ContinuedFraction cf_expand(const AlphaSpec& alpha) {
  // Bring (a + b*sqrt(d))/c to the form (P + sqrt(D))/Q with Q | D - P^2.
  mpz_class P = alpha.a();
  mpz_class D = alpha.b() * alpha.b() * alpha.d();
  mpz_class Q = alpha.c();
  if (alpha.b() < 0) {
    P = -P;
    Q = -Q;
  }
  if ((D - P * P) % Q != 0) {
    mpz_class absq = ::abs(Q);
    P *= absq;
    D *= absq * absq;
    Q *= absq;
  }

  std::vector<mpz_class> terms;
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;  // state before term k >= 1
  std::size_t period_start = 0;
  for (std::size_t k = 0;; ++k) {
    if (k >= 1) {
      auto [it, inserted] = seen.try_emplace({P, Q}, k);
      if (!inserted) {
        period_start = it->second;
        break;
      }
    }
    mpz_class a = surd_floor(P, D, Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
    if (Q == 0) throw std::logic_error("cf_expand: degenerate state (d square?)");
    if (k > 100000) throw std::logic_error("cf_expand: no period found");
  }

  ContinuedFraction cf;
  cf.preperiod.assign(terms.begin(), terms.begin() + static_cast<long>(period_start));
  cf.period.assign(terms.begin() + static_cast<long>(period_start), terms.end());
  return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count < 1) throw std::invalid_argument("convergents: count must be >= 1");
  std::vector<Convergent> out;
  out.reserve(count);
  mpz_class pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
  for (std::size_t k = 0; k < count; ++k) {
    mpz_class a = cf.term(k);
    mpz_class p = a * pm1 + pm2;
    mpz_class q = a * qm1 + qm2;
    out.push_back({p, q, k});
    pm2 = std::move(pm1);
    pm1 = p;
    qm2 = std::move(qm1);
    qm1 = q;
  }
  return out;
}

mpq_class cf_evaluate(const ContinuedFraction& cf, std::size_t count) {
  auto cs = convergents(cf, count);
  mpq_class v(cs.back().p, cs.back().q);
  v.canonicalize();
  return v;
}

}  // namespace kronpc
