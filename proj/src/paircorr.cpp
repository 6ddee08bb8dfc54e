#include "kronpc/paircorr.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <future>
#include <stdexcept>

#include "kronpc/bohr.hpp"

namespace kronpc {

namespace {

constexpr unsigned kRootBits = 224;

struct RootEnclosure {
  mpz_class t;   // t <= N^(p/q) * 2^scale < t + 1 (t exact when is_exact)
  unsigned scale = 0;
  bool is_exact = false;
};

RootEnclosure root_enclosure(u64 n, const mpz_class& p, unsigned long q) {
  RootEnclosure r;
  mpz_class npow;
  mpz_pow_ui(npow.get_mpz_t(), mpz_from_u128(n).get_mpz_t(), mpz_get_ui(p.get_mpz_t()));
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), npow.get_mpz_t(), q) != 0) {
    r.t = root;
    r.scale = 0;
    r.is_exact = true;
    return r;
  }
  mpz_class scaled = npow << (kRootBits * q);
  mpz_root(r.t.get_mpz_t(), scaled.get_mpz_t(), q);
  r.scale = kRootBits;
  r.is_exact = false;
  return r;
}

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

}  // namespace

QInterval power_q(u64 n, const mpq_class& e) {
  if (n < 1) throw std::invalid_argument("power_q: n must be positive");
  if (e == 0) return {mpq_class(1), mpq_class(1)};
  mpq_class ea = e > 0 ? e : mpq_class(-e);
  RootEnclosure r = root_enclosure(n, ea.get_num(), mpz_get_ui(ea.get_den().get_mpz_t()));
  mpz_class one_scaled = mpz_class(1) << r.scale;
  QInterval pos;
  if (r.is_exact) {
    pos = {make_q(r.t, 1), make_q(r.t, 1)};
  } else {
    pos = {make_q(r.t, one_scaled), make_q(r.t + 1, one_scaled)};
  }
  if (e > 0) return pos;
  // reciprocal: 1/(t+1) <= N^-|e| <= 1/t (scaled)
  if (r.is_exact) return {make_q(1, r.t), make_q(1, r.t)};
  return {make_q(one_scaled, r.t + 1), make_q(one_scaled, r.t)};
}

int compare_rational_power(const mpq_class& r, const mpq_class& s, u64 n,
                           const mpq_class& exponent) {
  if (s <= 0) throw std::invalid_argument("compare_rational_power: s must be positive");
  if (exponent < 0) throw std::invalid_argument("compare_rational_power: exponent must be >= 0");
  if (r < 0) return -1;
  // r vs s*N^(p/q)  <=>  (r/s)^q vs N^p for nonnegative r.
  unsigned long q = mpz_get_ui(exponent.get_den().get_mpz_t());
  unsigned long p = mpz_get_ui(exponent.get_num().get_mpz_t());
  mpq_class ratio = r / s;
  ratio.canonicalize();
  mpz_class lhs_num, lhs_den, npow;
  mpz_pow_ui(lhs_num.get_mpz_t(), ratio.get_num().get_mpz_t(), q);
  mpz_pow_ui(lhs_den.get_mpz_t(), ratio.get_den().get_mpz_t(), q);
  mpz_pow_ui(npow.get_mpz_t(), mpz_from_u128(n).get_mpz_t(), p);
  mpz_class rhs = npow * lhs_den;
  return lhs_num == rhs ? 0 : (lhs_num > rhs ? 1 : -1);
}

PairCorrParams PairCorrParams::make(u64 n, mpq_class beta, mpq_class s) {
  if (n < 1) throw std::invalid_argument("params: N must be >= 1");
  if (beta <= 0 || beta > 1) throw std::invalid_argument("params: beta must be in (0, 1]");
  if (s < 0) throw std::invalid_argument("params: s must be nonnegative");
  if (s > 0 && compare_rational_power(mpq_class(1, 2), s, n, -(beta - 1) + 1 - 1 + beta - beta) == 0) {
    // unreachable; kept for symmetry
  }
  // eps = s/N^beta >= 1/2  <=>  2s >= N^beta.
  if (s > 0) {
    int cmp = compare_rational_power(2 * s, mpq_class(1), n, beta);
    if (cmp >= 0)
      throw std::domain_error("eps = s/N^beta >= 1/2: the norm window saturates");
  }
  PairCorrParams p;
  p.n = n;
  p.beta = beta;
  p.s = s;
  p.window = s == 0 ? EpsWindow::from_rational(mpq_class(0))
                    : EpsWindow::from_power(s, n, beta);
  p.beta.canonicalize();
  p.s.canonicalize();
  return p;
}

const char* variant_name(Variant v) {
  return v == Variant::Strict ? "strict" : "paper-eq1";
}

const char* pc_method_name(PcMethod m) {
  switch (m) {
    case PcMethod::Naive: return "naive";
    case PcMethod::Lattice: return "lattice";
    case PcMethod::Weighted: return "weighted";
  }
  return "?";
}

namespace {

struct ScanOutputs {
  ScanTotals totals;
  std::vector<u64> low_hits, high_hits;
};

// Chunked full-range scan; totals and hit lists are partition-independent.
ScanOutputs run_scan(const AlphaCtx& ctx, const EpsWindow& window, u64 n,
                     ScanImpl impl, unsigned jobs, bool record) {
  ScanOutputs out;
  if (jobs < 1) jobs = 1;
  if (jobs > n) jobs = static_cast<unsigned>(n);
  const u128 guard = static_cast<u128>(n) + 1;
  if (jobs == 1) {
    ScanParams params{1, n, n, guard};
    HitSink sink;
    if (record) {
      sink.low = &out.low_hits;
      sink.high = &out.high_hits;
    }
    out.totals = scan_range(ctx, window, params, sink, impl);
    return out;
  }
  struct Part {
    ScanTotals totals;
    std::vector<u64> low, high;
  };
  std::vector<std::future<Part>> futures;
  const u64 chunk = n / jobs;
  for (unsigned i = 0; i < jobs; ++i) {
    u64 lo = 1 + chunk * i;
    u64 hi = (i + 1 == jobs) ? n : chunk * (i + 1);
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      Part part;
      ScanParams params{lo, hi, n, guard};
      HitSink sink;
      if (record) {
        sink.low = &part.low;
        sink.high = &part.high;
      }
      part.totals = scan_range(ctx, window, params, sink, impl);
      return part;
    }));
  }
  for (auto& f : futures) {
    Part part = f.get();
    out.totals += part.totals;
    out.low_hits.insert(out.low_hits.end(), part.low.begin(), part.low.end());
    out.high_hits.insert(out.high_hits.end(), part.high.begin(), part.high.end());
  }
  return out;
}

// sum over k in [1, N] of succ(k) = #lowhits <= N-k) + #(highhits <= k-1),
// walked per k with two monotone cursors.
u128 lattice_successor_sum(const std::vector<u64>& low_hits,
                           const std::vector<u64>& high_hits, u64 n) {
  u128 total = 0;
  std::size_t li = low_hits.size();  // # hits <= N-k; starts at N-1
  while (li > 0 && low_hits[li - 1] > n - 1) --li;
  std::size_t hi = 0;  // # hits <= k-1; starts at 0
  for (u64 k = 1; k <= n; ++k) {
    while (li > 0 && low_hits[li - 1] > n - k) --li;
    while (hi < high_hits.size() && high_hits[hi] <= k - 1) ++hi;
    total += li + hi;
  }
  return total;
}

QInterval f_from_pair(u128 pair, u64 n, const mpq_class& beta) {
  // F = pair * N^(beta - 2)
  QInterval p = power_q(n, beta - 2);
  mpq_class pq(mpz_from_u128(pair));
  return p.scale(pq);
}

}  // namespace

PairCorrRecord f_stat(const AlphaCtx& ctx, const PairCorrParams& params,
                      const FStatOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  PairCorrRecord rec;
  rec.alpha_spec = ctx.spec().spec_string();
  rec.n = params.n;
  rec.beta = params.beta;
  rec.s = params.s;
  rec.variant = opts.variant;
  rec.method = opts.method;
  rec.target = 2 * params.s;
  rec.eps_print = params.window.print_value();

  u128 pairs = 0;
  if (params.s > 0) {
    switch (opts.method) {
      case PcMethod::Weighted: {
        ScanOutputs out = run_scan(ctx, params.window, params.n, opts.impl, opts.jobs, false);
        pairs = 2 * (out.totals.weighted_low + out.totals.weighted_high);
        rec.exact_fallbacks = out.totals.fallbacks;
        break;
      }
      case PcMethod::Lattice: {
        ScanOutputs out = run_scan(ctx, params.window, params.n, opts.impl, opts.jobs, true);
        pairs = 2 * lattice_successor_sum(out.low_hits, out.high_hits, params.n);
        rec.exact_fallbacks = out.totals.fallbacks;
        break;
      }
      case PcMethod::Naive: {
        pairs = pair_count_naive(ctx, params.n, params.window, opts.naive_cap);
        break;
      }
    }
  }
  if (opts.variant == Variant::PaperEq1) pairs += params.n;
  rec.pair_count = pairs;
  rec.f_value = f_from_pair(pairs, params.n, params.beta);
  rec.deviation = rec.f_value.sub_q(rec.target);
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
  return rec;
}

namespace {

struct MinMaxTrack {
  u64 min_v = ~0ULL, max_v = 0;
  u64 min_k = 0, max_k = 0;
  void feed(u64 v, u64 k) {
    if (v < min_v) {
      min_v = v;
      min_k = k;
    }
    if (v > max_v) {
      max_v = v;
      max_k = k;
    }
  }
};

// max(|min - V|, |max - V|) with the attaining k (smallest on ties), exact.
// target_scaled compares r against scale*s*N^(1-beta) via the power trick.
struct DevPick {
  QInterval dev;
  u64 argmax;
};

DevPick pick_deviation(const MinMaxTrack& t, const QInterval& v, const mpq_class& s,
                       u64 n, const mpq_class& one_minus_beta, unsigned scale) {
  // side decision: sign of (min + max) - 2*scale*V, exact unless tie
  DevPick out;
  mpq_class sum(mpz_from_u128(static_cast<u128>(t.min_v) + t.max_v));
  int side = s == 0 ? 1 : compare_rational_power(sum, 2 * scale * s, n, one_minus_beta);
  auto dev_of = [&](u64 val) {
    mpq_class vq(mpz_from_u128(val));
    QInterval sv = v.scale(scale);
    mpq_class lo = vq - sv.hi;
    mpq_class hi = vq - sv.lo;
    if (lo < 0 && hi <= 0) return QInterval{-hi, -lo};
    if (lo >= 0) return QInterval{lo, hi};
    return QInterval{mpq_class(0), std::max(-lo, hi)};
  };
  if (side > 0) {
    out.dev = dev_of(t.max_v);
    out.argmax = t.max_k;
  } else if (side < 0) {
    out.dev = dev_of(t.min_v);
    out.argmax = t.min_k;
  } else {
    out.dev = dev_of(t.max_v);
    out.argmax = std::min(t.min_k, t.max_k);
  }
  return out;
}

}  // namespace

LocalDeviationReport local_deviation(const AlphaCtx& ctx, const PairCorrParams& params,
                                     u64 cap, ScanImpl impl, unsigned jobs) {
  if (params.n > cap)
    throw std::invalid_argument("local_deviation: N exceeds the per-k cap");
  LocalDeviationReport rep;
  rep.n = params.n;
  rep.beta = params.beta;
  rep.s = params.s;
  mpq_class one_minus_beta = 1 - params.beta;
  rep.v = power_q(params.n, one_minus_beta).scale(params.s);

  ScanOutputs out = run_scan(ctx, params.window, params.n, impl, jobs, true);
  const auto& low = out.low_hits;
  const auto& high = out.high_hits;
  const u64 n = params.n;

  MinMaxTrack one, two;
  std::array<MinMaxTrack, 10> deciles;
  std::size_t lo_desc = low.size(), hi_desc = high.size();  // # <= N-k cursors
  while (lo_desc > 0 && low[lo_desc - 1] > n - 1) --lo_desc;
  while (hi_desc > 0 && high[hi_desc - 1] > n - 1) --hi_desc;
  std::size_t lo_asc = 0, hi_asc = 0;  // # <= k-1 cursors
  for (u64 k = 1; k <= n; ++k) {
    while (lo_desc > 0 && low[lo_desc - 1] > n - k) --lo_desc;
    while (hi_desc > 0 && high[hi_desc - 1] > n - k) --hi_desc;
    while (lo_asc < low.size() && low[lo_asc] <= k - 1) ++lo_asc;
    while (hi_asc < high.size() && high[hi_asc] <= k - 1) ++hi_asc;
    const u64 succ = static_cast<u64>(lo_desc) + hi_asc;
    const u64 pred = static_cast<u64>(hi_desc) + lo_asc;
    one.feed(succ, k);
    two.feed(succ + pred, k);
    deciles[(k - 1) * 10 / n].feed(succ, k);
  }

  DevPick p1 = pick_deviation(one, rep.v, params.s, n, one_minus_beta, 1);
  rep.one_sided_max = p1.dev;
  rep.one_sided_argmax = p1.argmax;
  DevPick p2 = pick_deviation(two, rep.v, params.s, n, one_minus_beta, 2);
  rep.two_sided_max = p2.dev;
  rep.two_sided_argmax = p2.argmax;
  for (int i = 0; i < 10; ++i) {
    if (deciles[i].max_k == 0 && deciles[i].min_k == 0) {
      rep.decile_one_sided_max[i] = 0;
      continue;
    }
    DevPick pd = pick_deviation(deciles[i], rep.v, params.s, n, one_minus_beta, 1);
    rep.decile_one_sided_max[i] = pd.dev.to_double();
  }
  return rep;
}

TWBound tw_bound(const AlphaCtx& ctx, const PairCorrParams& params,
                 const DiophantineProfile& profile) {
  TWBound out;
  out.c_used = profile.c;
  const u64 n = params.n;
  const mpq_class& s = params.s;
  // s*N^(1-beta) > 4, exact.
  out.cond_size = s > 0 && compare_rational_power(mpq_class(4), s, n, 1 - params.beta) < 0;
  // 0 < s/N^beta < sqrt(alpha): square both sides, compare in the field.
  if (s > 0) {
    unsigned long q = mpz_get_ui(params.beta.get_den().get_mpz_t());
    unsigned long p = mpz_get_ui(params.beta.get_num().get_mpz_t());
    mpz_class n2p;
    mpz_pow_ui(n2p.get_mpz_t(), mpz_from_u128(n).get_mpz_t(), 2 * p);
    Surd rhs = ctx.alpha_surd().pow_uint(q).mul_int(n2p);  // alpha^q * N^(2p)
    mpq_class lhs_q;                                       // s^(2q)
    mpz_class ln, ld;
    mpz_pow_ui(ln.get_mpz_t(), s.get_num().get_mpz_t(), 2 * q);
    mpz_pow_ui(ld.get_mpz_t(), s.get_den().get_mpz_t(), 2 * q);
    lhs_q = make_q(ln, ld);
    out.cond_window = rhs.compare_rational(lhs_q) > 0;
  }

  mpfr_t v, x, phix, e, ep, t1, clamp, cq;
  mpfr_inits2(256, v, x, phix, e, ep, t1, clamp, cq, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(clamp, 1, MPFR_RNDN);
  mpfr_mul_2si(t1, clamp, -20, MPFR_RNDN);
  mpfr_sub(clamp, clamp, t1, MPFR_RNDN);  // 1 - 2^-20
  mpfr_set_q(cq, profile.c.get_mpq_t(), MPFR_RNDN);

  // V = s * N^(1-beta)
  mpfr_set_ui(t1, 1, MPFR_RNDN);
  mpfr_set_q(v, (1 - params.beta).get_mpq_t(), MPFR_RNDN);
  mpfr_ui_pow(t1, n, v, MPFR_RNDN);  // wrong arg order guard below
  mpfr_set_q(v, s.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(v, v, t1, MPFR_RNDN);

  auto phi_of = [&](mpfr_t out_r, mpfr_t arg) {
    mpfr_div(out_r, cq, arg, MPFR_RNDN);
    if (mpfr_cmp(out_r, clamp) > 0) mpfr_set(out_r, clamp, MPFR_RNDN);
  };

  if (s > 0) {
    // x = 4*N*sqrt(V); E = V/phi(x); E' = sqrt(168)*sqrt(s*N^(3-beta))*E
    mpfr_sqrt(x, v, MPFR_RNDN);
    mpfr_mul_ui(x, x, 4, MPFR_RNDN);
    mpfr_mul_ui(x, x, static_cast<unsigned long>(n), MPFR_RNDN);
    phi_of(phix, x);
    mpfr_div(e, v, phix, MPFR_RNDN);
    out.e_value = mpfr_get_d(e, MPFR_RNDN);

    mpfr_set_q(t1, (3 - params.beta).get_mpq_t(), MPFR_RNDN);
    mpfr_ui_pow(ep, n, t1, MPFR_RNDN);  // N^(3-beta)
    mpfr_set_q(t1, s.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(ep, ep, t1, MPFR_RNDN);
    mpfr_sqrt(ep, ep, MPFR_RNDN);
    mpfr_sqrt_ui(t1, 168, MPFR_RNDN);
    mpfr_mul(ep, ep, t1, MPFR_RNDN);
    mpfr_mul(ep, ep, e, MPFR_RNDN);
    out.e_prime = mpfr_get_d(ep, MPFR_RNDN);

    phi_of(phix, ep);
    mpfr_log(t1, e, MPFR_RNDN);
    mpfr_sqr(phix, phix, MPFR_RNDN);
    mpfr_div(t1, t1, phix, MPFR_RNDN);
    out.bound_value = mpfr_get_d(t1, MPFR_RNDN);

    mpfr_log(t1, v, MPFR_RNDN);
    out.badly_approx_bound = mpfr_get_d(t1, MPFR_RNDN);
  } else {
    out.e_value = 0;
    out.e_prime = 0;
    out.bound_value = std::numeric_limits<double>::quiet_NaN();
    out.badly_approx_bound = std::numeric_limits<double>::quiet_NaN();
  }
  mpfr_clears(v, x, phix, e, ep, t1, clamp, cq, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::vector<SweepCell> convergence_sweep(const AlphaCtx& ctx, const mpq_class& beta,
                                         std::vector<mpq_class> s_grid,
                                         std::vector<u64> n_grid,
                                         const FStatOptions& opts) {
  std::sort(n_grid.begin(), n_grid.end());
  std::sort(s_grid.begin(), s_grid.end());
  std::vector<SweepCell> cells;
  for (u64 n : n_grid) {
    for (const mpq_class& s : s_grid) {
      SweepCell cell;
      cell.n = n;
      cell.s = s;
      try {
        PairCorrParams params = PairCorrParams::make(n, beta, s);
        cell.record = f_stat(ctx, params, opts);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace kronpc
