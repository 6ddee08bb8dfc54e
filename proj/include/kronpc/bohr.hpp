#pragma once

#include <utility>

#include <gmpxx.h>

#include "kronpc/alpha.hpp"
#include "kronpc/scan.hpp"
#include "kronpc/window.hpp"

namespace kronpc {

// Coordinates (l, n) -> (l, l*alpha + n): the unimodular change of basis the
// successor/predecessor sets live in.
struct LatticeModel {
  AlphaSpec alpha;
  int determinant() const { return 1; }
  Surd second_coord(u64 l, const mpz_class& n) const {
    Surd v(alpha.a() * mpz_from_u128(l), alpha.b() * mpz_from_u128(l), alpha.c(), alpha.d());
    return v.sub_int(-n);
  }
};

struct BohrQuery {
  AlphaSpec alpha;
  u64 n = 1;
  mpq_class eps;  // rational, in (0, 1/2)

  static BohrQuery make(AlphaSpec alpha, u64 n, mpq_class eps);
};

enum class CountMethod { Naive, FixedPoint, Exact };
const char* count_method_name(CountMethod m);

struct CountResult {
  u64 count = 0;
  u128 weighted = 0;  // sum over hits j of (N - j)
  CountMethod method = CountMethod::FixedPoint;
  u64 exact_fallbacks = 0;
};

// count = #{1 <= j <= N : ||j*alpha|| <= eps}, weighted = sum (N - j).
CountResult bohr_count(const AlphaCtx& ctx, const BohrQuery& query,
                       CountMethod method = CountMethod::FixedPoint,
                       ScanImpl impl = ScanImpl::Auto);

// #{1 <= l <= N, l != k : {(l-k)*alpha} in (0, eps]} for k in [0, N].
u64 successor_count(const AlphaCtx& ctx, u64 k, u64 n, const EpsWindow& window);
// #{1 <= l <= N, l != k : {(l-k)*alpha} in [1-eps, 1)}.
u64 predecessor_count(const AlphaCtx& ctx, u64 k, u64 n, const EpsWindow& window);

inline constexpr u64 kDefaultNaiveCap = 5000;

// Ground-truth double loop over point pairs: #{1 <= l != m <= N :
// ||x_l - x_m|| <= eps}. Decisions route through the pairwise fixed-point
// difference with exact fallback, independent of the difference-index scan.
u128 pair_count_naive(const AlphaCtx& ctx, u64 n, const EpsWindow& window,
                      u64 cap = kDefaultNaiveCap);

// Classical convex-geometry sandwich (V - sqrt(2)*F, 2V + F + 1); reported to
// show how vacuous it is for the thin boxes here.
std::pair<double, double> schnell_wills_bounds(double volume, double surface);

}  // namespace kronpc
