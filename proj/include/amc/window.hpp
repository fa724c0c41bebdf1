#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "amc/bigint.hpp"

namespace amc {

/// Inclusive integer interval [lo, hi]. Used both as a search window and as a run of members.
struct Interval {
  BigInt lo;
  BigInt hi;

  bool contains(const BigInt& n) const { return lo <= n && n <= hi; }
  BigInt size() const { return hi < lo ? BigInt(0) : BigInt(hi - lo + 1); }
  bool operator==(const Interval&) const = default;
};

using Window = Interval;

inline Window make_window(BigInt lo, BigInt hi) {
  if (hi < lo) throw ValidationError("window [" + lo.str() + ", " + hi.str() + "] has lo > hi");
  return Window{std::move(lo), std::move(hi)};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& w) {
  return os << '[' << w.lo << ", " << w.hi << ']';
}

/// Sorts and coalesces overlapping or adjacent intervals.
inline std::vector<Interval> merge_runs(std::vector<Interval> runs) {
  std::erase_if(runs, [](const Interval& r) { return r.hi < r.lo; });
  std::sort(runs.begin(), runs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& r : runs) {
    if (!out.empty() && r.lo <= out.back().hi + 1) {
      if (r.hi > out.back().hi) out.back().hi = r.hi;
    } else {
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Parts of `w` not covered by `covered` (which must be merged and sorted).
inline std::vector<Interval> subtract_runs(const Window& w, const std::vector<Interval>& covered) {
  std::vector<Interval> out;
  BigInt cursor = w.lo;
  for (const auto& r : covered) {
    if (r.hi < cursor) continue;
    if (r.lo > w.hi) break;
    if (r.lo > cursor) out.push_back({cursor, r.lo - 1});
    cursor = r.hi + 1;
    if (cursor > w.hi) return out;
  }
  if (cursor <= w.hi) out.push_back({cursor, w.hi});
  return out;
}

}  // namespace amc
