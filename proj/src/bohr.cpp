#include "kronpc/bohr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace kronpc {

BohrQuery BohrQuery::make(AlphaSpec alpha, u64 n, mpq_class eps) {
  if (n < 1) throw std::invalid_argument("bohr: N must be >= 1");
  if (eps <= 0 || eps >= mpq_class(1, 2))
    throw std::invalid_argument("bohr: eps must be in (0, 1/2)");
  return BohrQuery{std::move(alpha), n, std::move(eps)};
}

const char* count_method_name(CountMethod m) {
  switch (m) {
    case CountMethod::Naive: return "naive";
    case CountMethod::FixedPoint: return "fixed-point";
    case CountMethod::Exact: return "exact";
  }
  return "?";
}

CountResult bohr_count(const AlphaCtx& ctx, const BohrQuery& query,
                       CountMethod method, ScanImpl impl) {
  EpsWindow window = EpsWindow::from_rational(query.eps);
  CountResult r;
  r.method = method;
  if (method == CountMethod::Exact) {
    for (u64 j = 1; j <= query.n; ++j) {
      if (window.decide_norm(ctx, j)) {
        ++r.count;
        r.weighted += query.n - j;
      }
    }
    r.exact_fallbacks = query.n;
    return r;
  }
  if (method == CountMethod::Naive)
    throw std::invalid_argument("bohr_count: naive method applies to pair counts");

  ScanParams params;
  params.j_begin = 1;
  params.j_end = query.n;
  params.weight_n = query.n;
  params.guard = static_cast<u128>(query.n) + 1;
  ScanTotals t = scan_range(ctx, window, params, {}, impl);
  r.count = t.count_low + t.count_high;
  r.weighted = t.weighted_low + t.weighted_high;
  r.exact_fallbacks = t.fallbacks;
  return r;
}

namespace {

// Sides of the window over a prefix range [1, m].
struct PrefixCounts {
  u64 low = 0;
  u64 high = 0;
};

PrefixCounts range_counts(const AlphaCtx& ctx, u64 m, u64 n, const EpsWindow& window) {
  PrefixCounts out;
  if (m == 0) return out;
  ScanParams params;
  params.j_begin = 1;
  params.j_end = m;
  params.weight_n = n;
  params.guard = static_cast<u128>(n) + 1;
  ScanTotals t = scan_range(ctx, window, params);
  out.low = t.count_low;
  out.high = t.count_high;
  return out;
}

}  // namespace

u64 successor_count(const AlphaCtx& ctx, u64 k, u64 n, const EpsWindow& window) {
  if (k > n) throw std::invalid_argument("successor_count: k must be in [0, N]");
  // l > k contributes via {m*alpha} <= eps, l < k via the mirrored side.
  PrefixCounts fwd = range_counts(ctx, n - k, n, window);
  PrefixCounts back = k > 0 ? range_counts(ctx, k - 1, n, window) : PrefixCounts{};
  return fwd.low + back.high;
}

u64 predecessor_count(const AlphaCtx& ctx, u64 k, u64 n, const EpsWindow& window) {
  if (k > n) throw std::invalid_argument("predecessor_count: k must be in [0, N]");
  PrefixCounts fwd = range_counts(ctx, n - k, n, window);
  PrefixCounts back = k > 0 ? range_counts(ctx, k - 1, n, window) : PrefixCounts{};
  return fwd.high + back.low;
}

u128 pair_count_naive(const AlphaCtx& ctx, u64 n, const EpsWindow& window, u64 cap) {
  if (n > cap)
    throw std::invalid_argument(
        "pair_count_naive: N = " + std::to_string(n) + " exceeds the naive cap " +
        std::to_string(cap) + "; use the weighted or lattice method");
  std::vector<u128> pos(n + 1);
  for (u64 j = 1; j <= n; ++j) pos[j] = ctx.walk_at(j);

  const u128 guard = 2 * (static_cast<u128>(n) + 1);
  const u128 e_lo = window.e_lo();
  const u128 e_hi = window.e_hi();
  const bool def_ok = e_lo >= guard;
  u128 pairs = 0;
  for (u64 l = 1; l <= n; ++l) {
    for (u64 m = l + 1; m <= n; ++m) {
      u128 diff = pos[m] - pos[l];
      u128 folded = diff <= (static_cast<u128>(0) - diff) ? diff : static_cast<u128>(0) - diff;
      bool hit;
      if (def_ok && folded + guard <= e_lo) {
        hit = true;
      } else if (folded >= e_hi + guard) {
        hit = false;
      } else {
        // Exact circular difference of the two residues.
        Surd diff_exact = ctx.frac_surd(m).sub(ctx.frac_surd(l));
        if (diff_exact.sign() < 0) diff_exact = diff_exact.sub_int(-1);
        if (diff_exact.sign() <= 0) throw std::logic_error("pair_count_naive: bad residue");
        hit = window.residue_in_window(diff_exact);
      }
      if (hit) pairs += 2;
    }
  }
  return pairs;
}

std::pair<double, double> schnell_wills_bounds(double volume, double surface) {
  if (volume < 0 || surface < 0)
    throw std::invalid_argument("schnell_wills_bounds: inputs must be nonnegative");
  double lower = volume - std::sqrt(2.0) * surface;
  double upper = 2.0 * volume + surface + 1.0;
  return {lower, upper};
}

}  // namespace kronpc
