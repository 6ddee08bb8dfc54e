#include "kronpc/threegap.hpp"

#include <algorithm>
#include <stdexcept>

namespace kronpc {

bool GapReport::total_is_one() const {
  if (gaps.empty()) return false;
  Surd total = gaps[0].value.mul_int(mpz_from_u128(gaps[0].multiplicity));
  for (std::size_t i = 1; i < gaps.size(); ++i)
    total = total.add(gaps[i].value.mul_int(mpz_from_u128(gaps[i].multiplicity)));
  return total.equals_rational(mpq_class(1)) ||
         (total.is_rational() && total.rational_value() == 1);
}

bool GapReport::largest_is_sum() const {
  if (gaps.size() != 3) return false;
  return gaps[2].value.compare(gaps[0].value.add(gaps[1].value)) == 0;
}

GapReport gaps(const AlphaCtx& ctx, u64 n) {
  if (n < 1) throw std::invalid_argument("gaps: N must be >= 1");
  GapTracker tracker(ctx);
  for (u64 j = 0; j < n; ++j) tracker.insert_next();
  return tracker.report();
}

GapTracker::GapTracker(const AlphaCtx& ctx)
    : ctx_(ctx), points_(PointLess{this}) {}

bool GapTracker::PointLess::operator()(const Point& a, const Point& b) const {
  // Walk positions carry < j ulps of one-sided error; away from the 0/1 seam
  // and outside a generous guard the fixed-point order is the true order.
  constexpr u128 kGuard = static_cast<u128>(1) << 62;
  auto near_seam = [](u128 w) {
    return w < kGuard || w >= static_cast<u128>(0) - kGuard;
  };
  if (a.j == b.j) return false;
  if (!near_seam(a.w) && !near_seam(b.w)) {
    if (a.w + kGuard < b.w) return true;
    if (b.w + kGuard < a.w) return false;
  }
  return t->ctx_.frac_surd(a.j).compare(t->ctx_.frac_surd(b.j)) < 0;
}

Surd GapTracker::circ_gap(u64 from_j, u64 to_j) const {
  Surd g = ctx_.frac_surd(to_j).sub(ctx_.frac_surd(from_j));
  int s = g.sign();
  if (s < 0) g = g.sub_int(-1);
  if (s == 0) throw std::logic_error("gap between coinciding points");
  return g;
}

void GapTracker::gap_add(const Surd& g) { ++gap_counts_[g]; }

void GapTracker::gap_remove(const Surd& g) {
  auto it = gap_counts_.find(g);
  if (it == gap_counts_.end()) throw std::logic_error("gap bookkeeping mismatch");
  if (--it->second == 0) gap_counts_.erase(it);
}

void GapTracker::insert_next() {
  const u64 j = ++n_;
  if (static_cast<u128>(j) >= (static_cast<u128>(1) << 60))
    throw std::invalid_argument("gap tracker: N too large for the guard");
  Point p{ctx_.walk_at(j), j};
  if (n_ == 1) {
    points_.insert(p);
    // Single point: one full-circle gap.
    gap_add(Surd(1, 0, 1, ctx_.spec().d()));
    return;
  }
  auto [it, inserted] = points_.insert(p);
  if (!inserted) throw std::logic_error("duplicate circle point");
  auto next = std::next(it);
  u64 hi_j = next == points_.end() ? points_.begin()->j : next->j;
  u64 lo_j = it == points_.begin() ? std::prev(points_.end())->j : std::prev(it)->j;
  if (points_.size() == 2) {
    // The full circle splits into two arcs.
    gap_remove(Surd(1, 0, 1, ctx_.spec().d()));
  } else {
    gap_remove(circ_gap(lo_j, hi_j));
  }
  gap_add(circ_gap(lo_j, j));
  gap_add(circ_gap(j, hi_j));
}

GapReport GapTracker::report() const {
  GapReport r;
  r.n = n_;
  r.alpha_spec = ctx_.spec().spec_string();
  for (const auto& [value, count] : gap_counts_) r.gaps.push_back({value, count});
  return r;
}

}  // namespace kronpc
