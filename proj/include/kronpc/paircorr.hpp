#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kronpc/alpha.hpp"
#include "kronpc/diophantine.hpp"
#include "kronpc/scan.hpp"
#include "kronpc/window.hpp"

namespace kronpc {

// Exact rational enclosure [lo, hi] of a real quantity. All enclosures here
// come from integer q-th roots at 224 fractional bits, so widths are far
// below the 2^-96 certification budget.
struct QInterval {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
  mpq_class width() const { return hi - lo; }
  mpq_class mid() const { return (lo + hi) / 2; }
  double to_double() const { return mid().get_d(); }

  QInterval add_q(const mpq_class& r) const { return {lo + r, hi + r}; }
  QInterval sub_q(const mpq_class& r) const { return {lo - r, hi - r}; }
  QInterval scale(const mpq_class& r) const {  // r >= 0
    return {lo * r, hi * r};
  }
};

// N^e for rational e, as an exact enclosure (exact when N^e is rational).
QInterval power_q(u64 n, const mpq_class& e);

// rational r  vs  s * N^(p/q) with s > 0: -1, 0, +1. Exact.
int compare_rational_power(const mpq_class& r, const mpq_class& s, u64 n,
                           const mpq_class& exponent);

struct PairCorrParams {
  u64 n = 1;
  mpq_class beta;  // in (0, 1]
  mpq_class s;     // >= 0
  EpsWindow window;

  // Throws std::domain_error when eps = s/N^beta >= 1/2 (window saturates).
  static PairCorrParams make(u64 n, mpq_class beta, mpq_class s);
};

enum class Variant { Strict, PaperEq1 };
enum class PcMethod { Naive, Lattice, Weighted };
const char* variant_name(Variant v);
const char* pc_method_name(PcMethod m);

struct PairCorrRecord {
  std::string alpha_spec;
  u64 n = 0;
  mpq_class beta, s;
  Variant variant = Variant::Strict;
  PcMethod method = PcMethod::Weighted;
  // Numerator of F: the exact pair count, plus N for the paper-eq1 variant
  // (its per-k "+1" self term), so F = pair_count / N^(2-beta) always holds.
  u128 pair_count = 0;
  QInterval f_value;
  mpq_class target;      // 2s
  QInterval deviation;   // F - 2s
  mpq_class eps_print;
  u64 exact_fallbacks = 0;
  double wall_ms = 0;
};

struct FStatOptions {
  Variant variant = Variant::Strict;
  PcMethod method = PcMethod::Weighted;
  ScanImpl impl = ScanImpl::Auto;
  unsigned jobs = 1;
  u64 naive_cap = 5000;
};

PairCorrRecord f_stat(const AlphaCtx& ctx, const PairCorrParams& params,
                      const FStatOptions& opts = {});

struct LocalDeviationReport {
  u64 n = 0;
  mpq_class beta, s;
  QInterval v;  // s * N^(1-beta)
  QInterval one_sided_max;
  u64 one_sided_argmax = 0;
  QInterval two_sided_max;
  u64 two_sided_argmax = 0;
  std::array<double, 10> decile_one_sided_max{};
};

inline constexpr u64 kDefaultPerKCap = 100000;

// max over k in [1, N] of |succ(k) - sN^(1-beta)| (one-sided) and of
// |succ(k) + pred(k) - 2sN^(1-beta)| (two-sided), from one recorded scan.
LocalDeviationReport local_deviation(const AlphaCtx& ctx, const PairCorrParams& params,
                                     u64 cap = kDefaultPerKCap,
                                     ScanImpl impl = ScanImpl::Auto, unsigned jobs = 1);

struct TWBound {
  bool cond_size = false;    // s*N^(1-beta) > 4, exact
  bool cond_window = false;  // 0 < s/N^beta < sqrt(alpha), exact
  double e_value = 0;
  double e_prime = 0;
  double bound_value = 0;        // log(E) / phi(E')^2
  double badly_approx_bound = 0; // log(s*N^(1-beta))
  mpq_class c_used;
};

// Evaluates the counting-theorem bound expressions for empirical comparison;
// asserts nothing about the inequality itself.
TWBound tw_bound(const AlphaCtx& ctx, const PairCorrParams& params,
                 const DiophantineProfile& profile);

struct SweepCell {
  u64 n = 0;
  mpq_class s;
  std::optional<PairCorrRecord> record;
  std::string error;  // nonempty when the cell failed
};

// Cartesian grid, N outer ascending, s inner ascending; failed cells are
// recorded, not fatal.
std::vector<SweepCell> convergence_sweep(const AlphaCtx& ctx, const mpq_class& beta,
                                         std::vector<mpq_class> s_grid,
                                         std::vector<u64> n_grid,
                                         const FStatOptions& opts = {});

}  // namespace kronpc
