#include "kronpc/scan.hpp"

#include <stdexcept>

namespace kronpc {

bool avx2_available() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

ScanImpl resolve_impl(ScanImpl impl) {
  if (impl != ScanImpl::Auto) return impl;
  return avx2_available() ? ScanImpl::Avx2 : ScanImpl::Scalar;
}

const char* scan_impl_name(ScanImpl impl) {
  switch (resolve_impl(impl)) {
    case ScanImpl::Scalar: return "scalar";
    case ScanImpl::Avx2: return "avx2";
    default: return "auto";
  }
}

ScanTotals scan_range(const AlphaCtx& ctx, const EpsWindow& window,
                      const ScanParams& params, HitSink sink, ScanImpl impl) {
  detail::ScanThresholds t = detail::make_thresholds(window, params.guard);
  ScanImpl chosen = resolve_impl(impl);
#if defined(__x86_64__)
  if (chosen == ScanImpl::Avx2) {
    if (!avx2_available()) throw std::runtime_error("AVX2 not available on this CPU");
    if (t.simd_ok) return detail::scan_avx2(ctx, window, t, params, sink);
    if (impl == ScanImpl::Auto) chosen = ScanImpl::Scalar;  // degenerate window
    else throw std::invalid_argument("scan_avx2: window not SIMD-safe, use scalar");
  }
#else
  if (chosen == ScanImpl::Avx2) throw std::runtime_error("AVX2 not available on this platform");
#endif
  return detail::scan_scalar(ctx, window, t, params, sink);
}

}  // namespace kronpc
