#pragma once

#include <vector>

#include <gmpxx.h>

#include "kronpc/alpha.hpp"

namespace kronpc {

// Eventually periodic expansion [a0; a1, a2, ...]. The integer part a0 is
// always kept in the preperiod; recurrence detection starts at index 1, so
// golden reads as preperiod [1], period [1].
struct ContinuedFraction {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;

  mpz_class term(std::size_t k) const {
    if (k < preperiod.size()) return preperiod[k];
    return period[(k - preperiod.size()) % period.size()];
  }
  std::size_t period_length() const { return period.size(); }
};

struct Convergent {
  mpz_class p;
  mpz_class q;
  std::size_t index = 0;
};

// Exact expansion by the quadratic-surd state recursion; terminates when a
// (P, Q) state repeats (Lagrange).
ContinuedFraction cf_expand(const AlphaSpec& alpha);

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count);

// Finite evaluation of the first `count` terms as an exact rational.
mpq_class cf_evaluate(const ContinuedFraction& cf, std::size_t count);

}  // namespace kronpc
