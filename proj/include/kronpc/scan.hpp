#pragma once

#include <vector>

#include "kronpc/alpha.hpp"
#include "kronpc/int128.hpp"
#include "kronpc/window.hpp"

namespace kronpc {

// One pass over j in [j_begin, j_end] classifying the walk position
// w_j = j*step mod 2^128 against the window:
//   low hit    {j a} <= eps        high hit    {j a} >= 1 - eps
// Definite classifications come from thresholds widened by `guard` (the
// one-sided walk error in ulps); everything inside the guard bands is
// resolved exactly and counted in `fallbacks`. Totals are exact integers, so
// results are independent of range partitioning and of the kernel variant.
struct ScanParams {
  u64 j_begin = 1;
  u64 j_end = 0;      // inclusive; empty scan if j_end < j_begin
  u64 weight_n = 0;   // weights are (weight_n - j); requires weight_n >= j_end
  u128 guard = 0;     // must cover max walk error over the whole query range
};

struct ScanTotals {
  u64 count_low = 0;
  u64 count_high = 0;
  u128 weighted_low = 0;
  u128 weighted_high = 0;
  u64 fallbacks = 0;

  ScanTotals& operator+=(const ScanTotals& o) {
    count_low += o.count_low;
    count_high += o.count_high;
    weighted_low += o.weighted_low;
    weighted_high += o.weighted_high;
    fallbacks += o.fallbacks;
    return *this;
  }
  bool operator==(const ScanTotals& o) const {
    return count_low == o.count_low && count_high == o.count_high &&
           weighted_low == o.weighted_low && weighted_high == o.weighted_high &&
           fallbacks == o.fallbacks;
  }
};

// Optional per-hit recording (ascending j). Null pointers skip recording.
struct HitSink {
  std::vector<u64>* low = nullptr;
  std::vector<u64>* high = nullptr;
};

enum class ScanImpl { Auto, Scalar, Avx2 };

bool avx2_available();
ScanImpl resolve_impl(ScanImpl impl);
const char* scan_impl_name(ScanImpl impl);

ScanTotals scan_range(const AlphaCtx& ctx, const EpsWindow& window,
                      const ScanParams& params, HitSink sink = {},
                      ScanImpl impl = ScanImpl::Auto);

// Internal kernels, exposed for equivalence tests.
namespace detail {

struct ScanThresholds {
  u128 e_lo, e_hi;
  u128 guard;
  u128 def_low;   // w <= def_low        -> low hit   (valid iff defs_ok)
  u128 def_high;  // w >= def_high       -> high hit  (valid iff defs_ok)
  u128 miss_hi;   // e_hi < w <= miss_hi -> miss
  bool defs_ok;   // guard <= e_lo
  bool simd_ok;   // defs_ok and window sane for the vector kernel
};

ScanThresholds make_thresholds(const EpsWindow& window, u128 guard);

ScanTotals scan_scalar(const AlphaCtx& ctx, const EpsWindow& window,
                       const ScanThresholds& t, const ScanParams& params,
                       HitSink sink);
#if defined(__x86_64__)
ScanTotals scan_avx2(const AlphaCtx& ctx, const EpsWindow& window,
                     const ScanThresholds& t, const ScanParams& params,
                     HitSink sink);
#endif

}  // namespace detail

}  // namespace kronpc
