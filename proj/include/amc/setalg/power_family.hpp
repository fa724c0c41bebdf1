#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amc/bigint.hpp"
#include "amc/window.hpp"

namespace amc {

/// coeff * p^k + constant, viewed as a function of the block index k.
struct LinForm {
  BigInt coeff;
  BigInt constant;

  BigInt at(const BigInt& p, std::uint64_t k) const { return coeff * ipow(p, k) + constant; }
  LinForm operator+(const LinForm& o) const { return {coeff + o.coeff, constant + o.constant}; }
  LinForm operator-(const LinForm& o) const { return {coeff - o.coeff, constant - o.constant}; }
  bool operator==(const LinForm&) const = default;

  /// Sign of the form for all sufficiently large k.
  int eventual_sign() const {
    if (coeff != 0) return coeff > 0 ? 1 : -1;
    if (constant != 0) return constant > 0 ? 1 : -1;
    return 0;
  }
  bool diverges() const { return coeff > 0; }
  bool is_constant() const { return coeff == 0; }

  /// Smallest k >= from with at(j) >= bound for every j >= k; nullopt if that never happens.
  std::optional<std::uint64_t> holds_from(const BigInt& p, std::uint64_t from, const BigInt& bound) const {
    if (coeff < 0) return std::nullopt;
    if (coeff == 0) {
      if (constant >= bound) return from;
      return std::nullopt;
    }
    // Increasing in k once coeff > 0.
    std::uint64_t k = from;
    BigInt pk = ipow(p, k);
    while (coeff * pk + constant < bound) {
      ++k;
      pk *= p;
    }
    return k;
  }
};

inline constexpr std::uint64_t kMaxExponent = 100000;
inline constexpr std::uint64_t kMaxFamilyExtra = std::uint64_t{1} << 20;

/// extraFinite ∪ ⋃_{k >= k0} [lowCoeff p^k + lowOffset, highCoeff p^k + highOffset], upper end included iff highClosed.
///
/// Both coefficients positive gives an upward family (blocks march to +inf). Both negative is the mirror image,
/// produced by `reflect`. Blocks are required to be eventually nonempty and eventually disjoint.
struct PowerIntervalFamily {
  BigInt p{2};
  BigInt lowCoeff{1};
  BigInt lowOffset{0};
  BigInt highCoeff{1};
  BigInt highOffset{0};
  std::uint64_t k0 = 0;
  bool highClosed = true;
  std::vector<BigInt> extraFinite;

  bool operator==(const PowerIntervalFamily&) const = default;

  bool upward() const { return lowCoeff > 0; }

  /// Inclusive upper offset.
  BigInt high_offset_inclusive() const { return highClosed ? highOffset : BigInt(highOffset - 1); }

  LinForm low_form() const { return {lowCoeff, lowOffset}; }
  LinForm high_form() const { return {highCoeff, high_offset_inclusive()}; }

  BigInt block_low(std::uint64_t k) const { return low_form().at(p, k); }
  BigInt block_high(std::uint64_t k) const { return high_form().at(p, k); }

  /// high(k) - low(k); block k is nonempty iff this is >= 0.
  LinForm size_form() const { return high_form() - low_form(); }

  /// low(k+1) - high(k); consecutive blocks are disjoint iff this is >= 1.
  LinForm gap_form() const { return LinForm{lowCoeff * p, lowOffset} - high_form(); }
};

inline PowerIntervalFamily reflect(const PowerIntervalFamily& f) {
  PowerIntervalFamily r;
  r.p = f.p;
  r.lowCoeff = -f.highCoeff;
  r.lowOffset = -f.high_offset_inclusive();
  r.highCoeff = -f.lowCoeff;
  r.highOffset = -f.lowOffset;
  r.highClosed = true;
  r.k0 = f.k0;
  for (auto it = f.extraFinite.rbegin(); it != f.extraFinite.rend(); ++it) r.extraFinite.push_back(-*it);
  return r;
}

inline PowerIntervalFamily shift(const PowerIntervalFamily& f, const BigInt& by) {
  PowerIntervalFamily r = f;
  r.lowOffset += by;
  r.highOffset += by;
  for (auto& v : r.extraFinite) v += by;
  return r;
}

inline void validate(const PowerIntervalFamily& f) {
  if (f.p < 2) throw ValidationError("power family base must be >= 2");
  if (f.k0 > kMaxExponent) throw ValidationError("power family k0 is unreasonably large");
  for (std::size_t i = 1; i < f.extraFinite.size(); ++i)
    if (!(f.extraFinite[i - 1] < f.extraFinite[i]))
      throw ValidationError("power family extraFinite must be sorted and distinct");
  if (f.lowCoeff == 0 || f.highCoeff == 0 || (f.lowCoeff > 0) != (f.highCoeff > 0))
    throw ValidationError("power family coefficients must be nonzero and share a sign");
  const PowerIntervalFamily up = f.upward() ? f : reflect(f);
  if (up.size_form().eventual_sign() < 0)
    throw ValidationError("power family blocks are eventually empty (inverted)");
  const LinForm gap = up.gap_form();
  if (gap.coeff < 0 || (gap.coeff == 0 && gap.constant < 1))
    throw ValidationError("power family blocks eventually overlap or touch");
}

namespace detail {

/// Blocks of an upward family intersected with [lo, hi], plus extras.
inline std::vector<Interval> upward_runs(const PowerIntervalFamily& f, const Window& w) {
  std::vector<Interval> out;
  for (const auto& v : f.extraFinite)
    if (w.contains(v)) out.push_back({v, v});
  BigInt pk = ipow(f.p, f.k0);
  for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    if (lo > w.hi) break;
    const BigInt hi = f.highCoeff * pk + f.high_offset_inclusive();
    if (hi < lo || hi < w.lo) continue;
    out.push_back({lo < w.lo ? w.lo : lo, hi > w.hi ? w.hi : hi});
  }
  return merge_runs(std::move(out));
}

/// Smallest member of an upward family strictly greater than n.
inline std::optional<BigInt> upward_next(const PowerIntervalFamily& f, const BigInt& n) {
  std::optional<BigInt> best;
  auto it = std::upper_bound(f.extraFinite.begin(), f.extraFinite.end(), n);
  if (it != f.extraFinite.end()) best = *it;
  BigInt pk = ipow(f.p, f.k0);
  for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    if (best && lo >= *best) break;
    const BigInt hi = f.highCoeff * pk + f.high_offset_inclusive();
    if (hi < lo || hi <= n) continue;
    const BigInt cand = lo > n ? lo : BigInt(n + 1);
    if (!best || cand < *best) best = cand;
    if (lo > n) break;
  }
  return best;
}

/// Largest member of an upward family strictly less than n.
inline std::optional<BigInt> upward_prev(const PowerIntervalFamily& f, const BigInt& n) {
  std::optional<BigInt> best;
  auto it = std::lower_bound(f.extraFinite.begin(), f.extraFinite.end(), n);
  if (it != f.extraFinite.begin()) best = *std::prev(it);
  BigInt pk = ipow(f.p, f.k0);
  for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    if (lo >= n) break;
    const BigInt hi = f.highCoeff * pk + f.high_offset_inclusive();
    if (hi < lo) continue;
    const BigInt cand = hi < n ? hi : BigInt(n - 1);
    if (!best || cand > *best) best = cand;
  }
  return best;
}

}  // namespace detail

inline bool member(const PowerIntervalFamily& f, const BigInt& n) {
  if (!f.upward()) return member(reflect(f), -n);
  if (std::binary_search(f.extraFinite.begin(), f.extraFinite.end(), n)) return true;
  BigInt pk = ipow(f.p, f.k0);
  for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    if (lo > n) return false;
    if (n <= f.highCoeff * pk + f.high_offset_inclusive()) return true;
  }
}

inline std::vector<Interval> runs(const PowerIntervalFamily& f, const Window& w) {
  if (f.upward()) return detail::upward_runs(f, w);
  auto mirrored = detail::upward_runs(reflect(f), Window{-w.hi, -w.lo});
  std::vector<Interval> out;
  for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it) out.push_back({-it->hi, -it->lo});
  return out;
}

inline std::optional<BigInt> next_member(const PowerIntervalFamily& f, const BigInt& n) {
  if (f.upward()) return detail::upward_next(f, n);
  auto r = detail::upward_prev(reflect(f), -n);
  if (!r) return std::nullopt;
  return BigInt(-*r);
}

inline std::optional<BigInt> prev_member(const PowerIntervalFamily& f, const BigInt& n) {
  if (f.upward()) return detail::upward_prev(f, n);
  auto r = detail::upward_next(reflect(f), -n);
  if (!r) return std::nullopt;
  return BigInt(-*r);
}

/// Infimum of an upward family (always finite when the family is nonempty).
inline std::optional<BigInt> upward_min(const PowerIntervalFamily& f) {
  std::optional<BigInt> best;
  if (!f.extraFinite.empty()) best = f.extraFinite.front();
  BigInt pk = ipow(f.p, f.k0);
  for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    if (best && lo >= *best) break;
    if (f.highCoeff * pk + f.high_offset_inclusive() >= lo) {
      if (!best || lo < *best) best = lo;
      break;
    }
  }
  return best;
}

/// Divides both coefficients by p while possible (re-indexing k0), then lowers k0 while the preceding
/// block is already contained in the set, dropping extras the blocks now cover. Denoted set is unchanged.
inline PowerIntervalFamily simplify(PowerIntervalFamily f) {
  if (!f.upward()) return reflect(simplify(reflect(f)));
  while (f.lowCoeff % f.p == 0 && f.highCoeff % f.p == 0) {
    f.lowCoeff /= f.p;
    f.highCoeff /= f.p;
    ++f.k0;
  }
  std::set<BigInt> extra(f.extraFinite.begin(), f.extraFinite.end());
  auto covered = [&](const BigInt& lo, const BigInt& hi) {
    for (BigInt x = lo; x <= hi; ++x) {
      if (extra.count(x)) continue;
      // Not an extra: must lie in a later block.
      bool in_block = false;
      BigInt pk = ipow(f.p, f.k0);
      for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
        const BigInt blo = f.lowCoeff * pk + f.lowOffset;
        if (blo > x) break;
        if (x <= f.highCoeff * pk + f.high_offset_inclusive()) {
          in_block = true;
          break;
        }
      }
      if (!in_block) return false;
    }
    return true;
  };
  while (f.k0 > 0) {
    const std::uint64_t k = f.k0 - 1;
    const BigInt lo = f.block_low(k);
    const BigInt hi = f.block_high(k);
    if (hi < lo) break;
    if (BigInt(hi - lo + 1) > BigInt(kMaxFamilyExtra)) break;
    if (!covered(lo, hi)) break;
    f.k0 = k;
    for (auto it = extra.lower_bound(lo); it != extra.end() && *it <= hi;) it = extra.erase(it);
  }
  f.extraFinite.assign(extra.begin(), extra.end());
  return f;
}

/// First block index K of an upward family from which blocks are nonempty, disjoint with gap >= 1 (also from
/// block K-1), start above every extra, and start at 1 or later.
inline std::uint64_t stable_block_index(const PowerIntervalFamily& f) {
  const LinForm gap = f.gap_form();
  const LinForm size = f.size_form();
  const BigInt max_extra = f.extraFinite.empty() ? BigInt(0) : f.extraFinite.back();
  for (std::uint64_t K = f.k0;; ++K) {
    if (K > kMaxExponent) throw BudgetError("no stable block index found for power family");
    auto g = gap.holds_from(f.p, K, 1);
    auto s = size.holds_from(f.p, K, 0);
    if (!g || !s || *g > K || *s > K) continue;
    if (K > f.k0 && gap.at(f.p, K - 1) < 1) continue;
    const BigInt lk = f.block_low(K);
    if (lk <= max_extra || lk < 1) continue;
    return K;
  }
}

/// Result of taking the positive complement of an upward family: either another family or a finite set.
struct FamilyComplement {
  std::optional<PowerIntervalFamily> family;
  std::vector<BigInt> finite;  // used when family is empty
};

/// Z+ \ f for a valid upward family. The gaps between consecutive blocks become the new blocks;
/// everything below the first well-behaved block becomes explicit extras.
inline FamilyComplement positive_complement(const PowerIntervalFamily& f) {
  if (!f.upward()) throw UnsupportedError("positive complement of a downward family is not a family");
  validate(f);
  const LinForm gap = f.gap_form();
  const std::uint64_t K = stable_block_index(f);
  const BigInt lk = f.block_low(K);
  if (BigInt(lk) > BigInt(kMaxFamilyExtra)) throw BudgetError("complement prefix below the first stable block is too large");
  // Finite prefix [1, lk-1] minus members.
  std::vector<Interval> below = runs(f, Window{1, lk - 1});
  std::vector<Interval> holes = lk > 1 ? subtract_runs(Window{1, lk - 1}, below) : std::vector<Interval>{};
  std::vector<BigInt> prefix;
  for (const auto& h : holes)
    for (BigInt x = h.lo; x <= h.hi; ++x) prefix.push_back(x);

  FamilyComplement out;
  if (gap.coeff == 0 && gap.constant == 1) {
    // Blocks tile from K on: complement is finite.
    out.finite = std::move(prefix);
    return out;
  }
  PowerIntervalFamily c;
  c.p = f.p;
  c.lowCoeff = f.highCoeff;
  c.lowOffset = f.high_offset_inclusive() + 1;
  c.highCoeff = f.lowCoeff * f.p;
  c.highOffset = f.lowOffset - 1;
  c.highClosed = true;
  c.k0 = K;
  c.extraFinite = std::move(prefix);
  out.family = simplify(std::move(c));
  return out;
}

}  // namespace amc
