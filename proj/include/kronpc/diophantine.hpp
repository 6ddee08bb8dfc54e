#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "kronpc/alpha.hpp"
#include "kronpc/cf.hpp"

namespace kronpc {

// Witness for q*||q*alpha|| >= c. Two constants are carried:
//   c         — min over all examined convergents, a uniform lower bound
//               valid for every q (best approximations are convergents);
//               this is what phi() uses.
//   c_liminf  — min over the last two periods of examined convergents, an
//               estimate of liminf q*||q*alpha|| (the Hurwitz/Lagrange
//               constant; 1/sqrt(5) for the golden ratio). Reported for
//               cross-checks; small-q transients (e.g. q = 1 for golden)
//               sit below it.
// Both are certified rational lower bounds within 2^-64 of the exact values.
struct DiophantineProfile {
  enum class Provenance { ComputedFromPeriod, UserSupplied };

  mpq_class c;
  mpq_class c_liminf;
  Provenance provenance = Provenance::ComputedFromPeriod;
  std::size_t depth = 0;

  // phi(q) = min(c/q, 1 - 2^-20), non-increasing with values in (0, 1).
  mpq_class phi(const mpq_class& q) const;

  static DiophantineProfile user_supplied(mpq_class c);
};

// Scans the first `depth` convergents, comparing q_k*|q_k*alpha - p_k|
// exactly in the quadratic field. depth must be >= the period length.
DiophantineProfile bad_approx_constant(const AlphaSpec& alpha, std::size_t depth);

// Default depth: 3 * period length + 10.
DiophantineProfile bad_approx_constant(const AlphaSpec& alpha);

// q_k * |q_k*alpha - p_k| as an exact surd.
Surd convergent_quality(const AlphaSpec& alpha, const Convergent& conv);

}  // namespace kronpc
