#if defined(__x86_64__)

#include <immintrin.h>

#include <stdexcept>

#include "kronpc/scan.hpp"

namespace kronpc::detail {

namespace {

const __m256i kSignBias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));

inline __m256i cmpgt_u64(__m256i a, __m256i b) {
  return _mm256_cmpgt_epi64(_mm256_xor_si256(a, kSignBias), _mm256_xor_si256(b, kSignBias));
}

// 128-bit unsigned (hi, lo) <= threshold, lanewise.
inline __m256i le_u128(__m256i w_hi, __m256i w_lo, __m256i t_hi, __m256i t_lo) {
  __m256i hi_lt = cmpgt_u64(t_hi, w_hi);
  __m256i hi_eq = _mm256_cmpeq_epi64(w_hi, t_hi);
  __m256i lo_le = _mm256_xor_si256(cmpgt_u64(w_lo, t_lo), _mm256_set1_epi64x(-1));
  return _mm256_or_si256(hi_lt, _mm256_and_si256(hi_eq, lo_le));
}

inline int mask4(__m256i m) {
  return _mm256_movemask_pd(_mm256_castsi256_pd(m));
}

}  // namespace

ScanTotals scan_avx2(const AlphaCtx& ctx, const EpsWindow& window,
                     const ScanThresholds& t, const ScanParams& params,
                     HitSink sink) {
  ScanTotals totals;
  if (params.j_end < params.j_begin) return totals;
  if (params.weight_n < params.j_end)
    throw std::invalid_argument("scan: weight_n must cover the range");
  if (!t.simd_ok) throw std::logic_error("scan_avx2: window not SIMD-safe");

  const u64 n = params.weight_n;
  const u64 len = params.j_end - params.j_begin + 1;
  const u64 blocks = len / 4;

  auto resolve = [&](u64 j) {
    ++totals.fallbacks;
    if (window.decide_low(ctx, j)) {
      ++totals.count_low;
      totals.weighted_low += n - j;
      if (sink.low) sink.low->push_back(j);
    } else if (window.decide_high(ctx, j)) {
      ++totals.count_high;
      totals.weighted_high += n - j;
      if (sink.high) sink.high->push_back(j);
    }
  };

  if (blocks > 0) {
    const u128 step4 = mul_mod_2_128(ctx.step(), 4);
    alignas(32) u64 lanes_lo[4], lanes_hi[4];
    for (int i = 0; i < 4; ++i) {
      u128 w = ctx.walk_at(params.j_begin + static_cast<u64>(i));
      lanes_lo[i] = u128_lo(w);
      lanes_hi[i] = u128_hi(w);
    }
    __m256i w_lo = _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes_lo));
    __m256i w_hi = _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes_hi));
    const __m256i s_lo = _mm256_set1_epi64x(static_cast<long long>(u128_lo(step4)));
    const __m256i s_hi = _mm256_set1_epi64x(static_cast<long long>(u128_hi(step4)));
    const __m256i a_lo = _mm256_set1_epi64x(static_cast<long long>(u128_lo(t.def_low)));
    const __m256i a_hi = _mm256_set1_epi64x(static_cast<long long>(u128_hi(t.def_low)));
    const __m256i b_lo = _mm256_set1_epi64x(static_cast<long long>(u128_lo(t.e_hi)));
    const __m256i b_hi = _mm256_set1_epi64x(static_cast<long long>(u128_hi(t.e_hi)));
    const __m256i c_lo = _mm256_set1_epi64x(static_cast<long long>(u128_lo(t.miss_hi)));
    const __m256i c_hi = _mm256_set1_epi64x(static_cast<long long>(u128_hi(t.miss_hi)));
    const u128 d1 = t.def_high - 1;
    const __m256i d_lo = _mm256_set1_epi64x(static_cast<long long>(u128_lo(d1)));
    const __m256i d_hi = _mm256_set1_epi64x(static_cast<long long>(u128_hi(d1)));
    const __m256i ones = _mm256_set1_epi64x(-1);
    const __m256i four = _mm256_set1_epi64x(4);

    // Per-lane accumulators; flushed before the weight sums can overflow.
    __m256i cnt_low = _mm256_setzero_si256();
    __m256i cnt_high = _mm256_setzero_si256();
    __m256i wsum_low = _mm256_setzero_si256();
    __m256i wsum_high = _mm256_setzero_si256();
    const u64 flush_every = n > 0 ? (~0ULL / n > 4 ? ~0ULL / n / 2 : 1) : ~0ULL;
    u64 since_flush = 0;

    // weights n - j for the current lane indices
    alignas(32) u64 winit[4];
    for (int i = 0; i < 4; ++i) winit[i] = n - (params.j_begin + static_cast<u64>(i));
    __m256i wvec = _mm256_load_si256(reinterpret_cast<const __m256i*>(winit));

    auto flush = [&]() {
      alignas(32) u64 buf[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(buf), cnt_low);
      totals.count_low += buf[0] + buf[1] + buf[2] + buf[3];
      _mm256_store_si256(reinterpret_cast<__m256i*>(buf), cnt_high);
      totals.count_high += buf[0] + buf[1] + buf[2] + buf[3];
      _mm256_store_si256(reinterpret_cast<__m256i*>(buf), wsum_low);
      totals.weighted_low += static_cast<u128>(buf[0]) + buf[1] + buf[2] + buf[3];
      _mm256_store_si256(reinterpret_cast<__m256i*>(buf), wsum_high);
      totals.weighted_high += static_cast<u128>(buf[0]) + buf[1] + buf[2] + buf[3];
      cnt_low = cnt_high = wsum_low = wsum_high = _mm256_setzero_si256();
      since_flush = 0;
    };

    const bool recording = sink.low != nullptr || sink.high != nullptr;
    for (u64 blk = 0; blk < blocks; ++blk) {
      const u64 base = params.j_begin + 4 * blk;

      __m256i hit_low = le_u128(w_hi, w_lo, a_hi, a_lo);
      __m256i le_b = le_u128(w_hi, w_lo, b_hi, b_lo);
      __m256i le_c = le_u128(w_hi, w_lo, c_hi, c_lo);
      __m256i hit_high = _mm256_xor_si256(le_u128(w_hi, w_lo, d_hi, d_lo), ones);
      __m256i miss = _mm256_andnot_si256(le_b, le_c);
      __m256i settled = _mm256_or_si256(_mm256_or_si256(hit_low, hit_high), miss);
      int boundary = mask4(settled) ^ 0xf;

      if (boundary || recording) {
        int ml = mask4(hit_low), mh = mask4(hit_high);
        for (int lane = 0; lane < 4; ++lane) {
          const u64 j = base + static_cast<u64>(lane);
          if (boundary & (1 << lane)) {
            resolve(j);
          } else if (sink.low && (ml & (1 << lane))) {
            sink.low->push_back(j);
          } else if (sink.high && (mh & (1 << lane))) {
            sink.high->push_back(j);
          }
        }
      }
      cnt_low = _mm256_sub_epi64(cnt_low, hit_low);
      cnt_high = _mm256_sub_epi64(cnt_high, hit_high);
      wsum_low = _mm256_add_epi64(wsum_low, _mm256_and_si256(hit_low, wvec));
      wsum_high = _mm256_add_epi64(wsum_high, _mm256_and_si256(hit_high, wvec));

      if (++since_flush >= flush_every) flush();

      // advance lanes: w += 4*step (mod 2^128), weights -= 4
      __m256i nlo = _mm256_add_epi64(w_lo, s_lo);
      __m256i carry = cmpgt_u64(s_lo, nlo);  // nlo < s_lo  => carry out
      __m256i nhi = _mm256_sub_epi64(_mm256_add_epi64(w_hi, s_hi), carry);
      w_lo = nlo;
      w_hi = nhi;
      wvec = _mm256_sub_epi64(wvec, four);
    }
    flush();
  }

  // Scalar tail keeps j ascending in the sinks.
  const u64 tail_begin = params.j_begin + 4 * blocks;
  if (tail_begin <= params.j_end) {
    ScanParams tail = params;
    tail.j_begin = tail_begin;
    totals += scan_scalar(ctx, window, t, tail, sink);
  }
  return totals;
}

}  // namespace kronpc::detail

#endif  // __x86_64__
