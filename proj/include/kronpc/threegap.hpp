#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kronpc/alpha.hpp"

namespace kronpc {

struct GapEntry {
  Surd value;
  u64 multiplicity;
};

struct GapReport {
  u64 n = 0;
  std::string alpha_spec;
  std::vector<GapEntry> gaps;  // ascending, exact-deduplicated

  std::size_t distinct() const { return gaps.size(); }
  // Sum gap*multiplicity == 1, exact.
  bool total_is_one() const;
  // With three gaps, largest == sum of the other two, exact.
  bool largest_is_sum() const;
};

// Sorts {j*alpha}, j = 1..N, on the circle with exact comparisons and
// deduplicates the consecutive gaps exactly. Exact dedup is the point: float
// bucketing would mask substrate bugs.
GapReport gaps(const AlphaCtx& ctx, u64 n);

// Incremental variant: insert points one at a time, maintaining the exact
// gap multiset. Lets a sweep over all N up to 10^4 run in O(N log N) total
// instead of re-sorting per N.
class GapTracker {
 public:
  explicit GapTracker(const AlphaCtx& ctx);

  void insert_next();  // adds the point for j = current N + 1
  u64 n() const { return n_; }
  GapReport report() const;

 private:
  struct Point {
    u128 w;
    u64 j;
  };
  struct PointLess {
    const GapTracker* t;
    bool operator()(const Point& a, const Point& b) const;
  };
  struct SurdLess {
    bool operator()(const Surd& a, const Surd& b) const { return a.compare(b) < 0; }
  };

  Surd circ_gap(u64 from_j, u64 to_j) const;  // frac(to) - frac(from) mod 1
  void gap_add(const Surd& g);
  void gap_remove(const Surd& g);

  const AlphaCtx& ctx_;
  u64 n_ = 0;
  std::set<Point, PointLess> points_;
  std::map<Surd, u64, SurdLess> gap_counts_;
};

}  // namespace kronpc
