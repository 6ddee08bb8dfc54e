#include <stdexcept>

#include "kronpc/scan.hpp"

namespace kronpc::detail {

ScanThresholds make_thresholds(const EpsWindow& window, u128 guard) {
  ScanThresholds t{};
  t.e_lo = window.e_lo();
  t.e_hi = window.e_hi();
  t.guard = guard;
  t.defs_ok = guard <= t.e_lo;
  t.def_low = t.defs_ok ? t.e_lo - guard : 0;
  t.def_high = static_cast<u128>(0) - t.e_lo;
  t.miss_hi = static_cast<u128>(0) - t.e_hi - guard;
  // The vector kernel assumes a window comfortably inside (0, 2^127).
  t.simd_ok = t.defs_ok && t.e_hi + guard < (static_cast<u128>(1) << 126);
  return t;
}

namespace {

// Exact resolution of one guard-band index; keeps kernels identical by
// construction regardless of how they classify the definite bulk.
struct FallbackCounter {
  const AlphaCtx& ctx;
  const EpsWindow& window;
  const ScanParams& params;
  HitSink sink;

  void resolve(u64 j, ScanTotals& totals) const {
    ++totals.fallbacks;
    if (window.decide_low(ctx, j)) {
      ++totals.count_low;
      totals.weighted_low += params.weight_n - j;
      if (sink.low) sink.low->push_back(j);
    } else if (window.decide_high(ctx, j)) {
      ++totals.count_high;
      totals.weighted_high += params.weight_n - j;
      if (sink.high) sink.high->push_back(j);
    }
  }
};

}  // namespace

ScanTotals scan_scalar(const AlphaCtx& ctx, const EpsWindow& window,
                       const ScanThresholds& t, const ScanParams& params,
                       HitSink sink) {
  ScanTotals totals;
  if (params.j_end < params.j_begin) return totals;
  if (params.weight_n < params.j_end)
    throw std::invalid_argument("scan: weight_n must cover the range");
  FallbackCounter fb{ctx, window, params, sink};

  u128 w = ctx.walk_at(params.j_begin);
  const u128 step = ctx.step();
  const u64 n = params.weight_n;
  for (u64 j = params.j_begin;; ++j) {
    if (t.defs_ok && w <= t.def_low) {
      ++totals.count_low;
      totals.weighted_low += n - j;
      if (sink.low) sink.low->push_back(j);
    } else if (t.defs_ok && w >= t.def_high) {
      ++totals.count_high;
      totals.weighted_high += n - j;
      if (sink.high) sink.high->push_back(j);
    } else if (w > t.e_hi && w <= t.miss_hi) {
      // definite miss
    } else {
      fb.resolve(j, totals);
    }
    if (j == params.j_end) break;
    w += step;
  }
  return totals;
}

}  // namespace kronpc::detail
