#pragma once

#include <optional>
#include <vector>

#include "amc/setalg/int_set.hpp"

namespace amc {

/// inf/sup of a set. When `empty` is false a missing value means unbounded in that direction.
struct SetBounds {
  std::optional<BigInt> inf;
  std::optional<BigInt> sup;
  bool empty = false;
};

bool member(const IntSetExpr& s, const BigInt& n);
std::optional<BigInt> next_member(const IntSetExpr& s, const BigInt& n);
std::optional<BigInt> prev_member(const IntSetExpr& s, const BigInt& n);
std::optional<BigInt> next_nonmember(const IntSetExpr& s, const BigInt& n);
std::optional<BigInt> prev_nonmember(const IntSetExpr& s, const BigInt& n);
std::vector<Interval> runs(const IntSetExpr& s, const Window& w, BigInt& budget_used);
SetBounds bounds(const IntSetExpr& s);
std::optional<BigInt> upper_cofinite(const IntSetExpr& s);
std::optional<BigInt> lower_cofinite(const IntSetExpr& s);

namespace detail {

inline constexpr std::uint64_t kMaxHops = std::uint64_t{1} << 20;

inline std::optional<BigInt> min_opt(std::optional<BigInt> a, const std::optional<BigInt>& b) {
  if (b && (!a || *b < *a)) return b;
  return a;
}
inline std::optional<BigInt> max_opt(std::optional<BigInt> a, const std::optional<BigInt>& b) {
  if (b && (!a || *b > *a)) return b;
  return a;
}

// ---- exact form ----

inline std::optional<BigInt> form_next_member(const ResidueForm& f, const BigInt& n) {
  std::optional<BigInt> best;
  if (auto it = f.points.upper_bound(n); it != f.points.end()) best = *it;
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    const BigInt first = n + 1 + floor_mod(BigInt(static_cast<std::int64_t>(r)) - (n + 1), M);
    if (f.down[r] && first <= *f.down[r]) best = min_opt(best, first);
    if (f.up[r]) best = min_opt(best, first < *f.up[r] ? *f.up[r] : first);
  }
  return best;
}

inline std::optional<BigInt> form_prev_member(const ResidueForm& f, const BigInt& n) {
  std::optional<BigInt> best;
  if (auto it = f.points.lower_bound(n); it != f.points.begin()) best = *std::prev(it);
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    const BigInt last = n - 1 - floor_mod(n - 1 - BigInt(static_cast<std::int64_t>(r)), M);
    if (f.up[r] && last >= *f.up[r]) best = max_opt(best, last);
    if (f.down[r]) best = max_opt(best, last > *f.down[r] ? *f.down[r] : last);
  }
  return best;
}

inline std::optional<BigInt> form_next_nonmember(const ResidueForm& f, const BigInt& n) {
  std::optional<BigInt> best;
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    if (f.is_line(r)) continue;
    BigInt c = n + 1 + floor_mod(BigInt(static_cast<std::int64_t>(r)) - (n + 1), M);
    if (f.down[r] && c <= *f.down[r]) c = *f.down[r] + M;
    bool ok = true;
    while (ok && f.points.count(c)) c += M;
    if (f.up[r] && c >= *f.up[r]) ok = false;
    if (ok) best = min_opt(best, c);
  }
  return best;
}

inline std::optional<BigInt> form_prev_nonmember(const ResidueForm& f, const BigInt& n) {
  std::optional<BigInt> best;
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    if (f.is_line(r)) continue;
    BigInt c = n - 1 - floor_mod(n - 1 - BigInt(static_cast<std::int64_t>(r)), M);
    if (f.up[r] && c >= *f.up[r]) c = *f.up[r] - M;
    while (f.points.count(c)) c -= M;
    if (f.down[r] && c <= *f.down[r]) continue;
    best = max_opt(best, c);
  }
  return best;
}

// ---- power families ----

/// For an upward family whose blocks eventually tile: the point from which every integer is a member.
inline std::optional<BigInt> tiling_threshold(const PowerIntervalFamily& f) {
  const LinForm gap = f.gap_form();
  if (!(gap.coeff == 0 && gap.constant == 1)) return std::nullopt;
  auto K = f.size_form().holds_from(f.p, f.k0, 0);
  if (!K) return std::nullopt;
  return f.block_low(*K);
}

inline std::optional<BigInt> upward_next_nonmember(const PowerIntervalFamily& f, const BigInt& n) {
  const auto T = tiling_threshold(f);
  BigInt x = n + 1;
  for (;;) {
    if (T && x >= *T) return std::nullopt;
    if (std::binary_search(f.extraFinite.begin(), f.extraFinite.end(), x)) {
      ++x;
      continue;
    }
    bool moved = false;
    BigInt pk = ipow(f.p, f.k0);
    for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
      const BigInt lo = f.lowCoeff * pk + f.lowOffset;
      if (lo > x) break;
      const BigInt hi = f.highCoeff * pk + f.high_offset_inclusive();
      if (x <= hi) {
        x = hi + 1;
        moved = true;
        break;
      }
    }
    if (!moved) return x;
  }
}

inline BigInt upward_prev_nonmember(const PowerIntervalFamily& f, const BigInt& n) {
  BigInt x = n - 1;
  for (;;) {
    if (std::binary_search(f.extraFinite.begin(), f.extraFinite.end(), x)) {
      --x;
      continue;
    }
    bool moved = false;
    BigInt pk = ipow(f.p, f.k0);
    for (std::uint64_t k = f.k0;; ++k, pk *= f.p) {
      const BigInt lo = f.lowCoeff * pk + f.lowOffset;
      if (lo > x) break;
      const BigInt hi = f.highCoeff * pk + f.high_offset_inclusive();
      if (x <= hi) {
        x = lo - 1;
        moved = true;
        break;
      }
    }
    if (!moved) return x;
  }
}

inline std::optional<BigInt> family_next_nonmember(const PowerIntervalFamily& f, const BigInt& n) {
  if (f.upward()) return upward_next_nonmember(f, n);
  return BigInt(-upward_prev_nonmember(reflect(f), -n));
}

inline std::optional<BigInt> family_prev_nonmember(const PowerIntervalFamily& f, const BigInt& n) {
  if (!f.upward()) {
    auto r = upward_next_nonmember(reflect(f), -n);
    if (!r) return std::nullopt;
    return BigInt(-*r);
  }
  return upward_prev_nonmember(f, n);
}

inline std::optional<BigInt> negate(const std::optional<BigInt>& v) {
  if (!v) return std::nullopt;
  return BigInt(-*v);
}
inline std::optional<BigInt> map_tr(const Transformed& t, const std::optional<BigInt>& v) {
  if (!v) return std::nullopt;
  return BigInt(t.sign * *v + t.offset);
}

// ---- oracle pieces ----

inline bool piece_member(const Piece& p, const BigInt& n) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return member(*f, n);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) return n >= 1 && !member(*c->of, n);
  const auto& t = std::get<Transformed>(p);
  return member(*t.of, t.sign * (n - t.offset));
}

inline std::optional<BigInt> piece_next_member(const Piece& p, const BigInt& n) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return next_member(*f, n);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) return next_nonmember(*c->of, n < 0 ? BigInt(0) : n);
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, next_member(*t.of, n - t.offset));
  return map_tr(t, prev_member(*t.of, t.offset - n));
}

inline std::optional<BigInt> piece_prev_member(const Piece& p, const BigInt& n) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return prev_member(*f, n);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    if (n <= 1) return std::nullopt;
    auto y = prev_nonmember(*c->of, n);
    if (y && *y >= 1) return y;
    return std::nullopt;
  }
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, prev_member(*t.of, n - t.offset));
  return map_tr(t, next_member(*t.of, t.offset - n));
}

inline std::optional<BigInt> piece_next_nonmember(const Piece& p, const BigInt& n) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return family_next_nonmember(*f, n);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    if (n < 0) return BigInt(n + 1);
    return next_member(*c->of, n);
  }
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, next_nonmember(*t.of, n - t.offset));
  return map_tr(t, prev_nonmember(*t.of, t.offset - n));
}

inline std::optional<BigInt> piece_prev_nonmember(const Piece& p, const BigInt& n) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return family_prev_nonmember(*f, n);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    if (n <= 1) return BigInt(n - 1);
    auto y = prev_member(*c->of, n);
    if (y && *y >= 1) return y;
    return BigInt(0);
  }
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, prev_nonmember(*t.of, n - t.offset));
  return map_tr(t, next_nonmember(*t.of, t.offset - n));
}

inline std::vector<Interval> piece_runs(const Piece& p, const Window& w, BigInt& used) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) return runs(*f, w);
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    if (w.hi < 1) return {};
    const Window clip{w.lo < 1 ? BigInt(1) : w.lo, w.hi};
    return subtract_runs(clip, runs(*c->of, clip, used));
  }
  const auto& t = std::get<Transformed>(p);
  std::vector<Interval> out;
  if (t.sign == 1) {
    for (auto& r : runs(*t.of, Window{w.lo - t.offset, w.hi - t.offset}, used))
      out.push_back({r.lo + t.offset, r.hi + t.offset});
  } else {
    auto inner = runs(*t.of, Window{t.offset - w.hi, t.offset - w.lo}, used);
    for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.push_back({t.offset - it->hi, t.offset - it->lo});
  }
  return out;
}

inline SetBounds piece_bounds(const Piece& p) {
  SetBounds b;
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) {
    if (f->upward())
      b.inf = upward_min(*f);
    else
      b.sup = negate(upward_min(reflect(*f)));
    return b;
  }
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    b.inf = piece_next_member(p, 0);
    if (!b.inf) {
      b.empty = true;
      return b;
    }
    if (auto T = upper_cofinite(*c->of)) b.sup = piece_prev_member(p, *T);
    return b;
  }
  const auto& t = std::get<Transformed>(p);
  const SetBounds inner = bounds(*t.of);
  b.empty = inner.empty;
  if (b.empty) return b;
  if (t.sign == 1) {
    b.inf = map_tr(t, inner.inf);
    b.sup = map_tr(t, inner.sup);
  } else {
    b.inf = map_tr(t, inner.sup);
    b.sup = map_tr(t, inner.inf);
  }
  return b;
}

inline std::optional<BigInt> piece_upper_cofinite(const Piece& p) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) {
    if (!f->upward()) return std::nullopt;
    return tiling_threshold(*f);
  }
  if (const auto* c = std::get_if<PositiveComplement>(&p)) {
    const SetBounds b = bounds(*c->of);
    if (b.empty) return BigInt(1);
    if (!b.sup) return std::nullopt;
    return *b.sup + 1 < 1 ? BigInt(1) : BigInt(*b.sup + 1);
  }
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, upper_cofinite(*t.of));
  return map_tr(t, lower_cofinite(*t.of));
}

inline std::optional<BigInt> piece_lower_cofinite(const Piece& p) {
  if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) {
    if (f->upward()) return std::nullopt;
    return negate(tiling_threshold(reflect(*f)));
  }
  if (std::holds_alternative<PositiveComplement>(p)) return std::nullopt;
  const auto& t = std::get<Transformed>(p);
  if (t.sign == 1) return map_tr(t, lower_cofinite(*t.of));
  return map_tr(t, upper_cofinite(*t.of));
}

template <class F>
void for_oracle_pieces(const IntSetExpr& s, F&& fn) {
  for (const auto& p : s.pieces())
    if (!is_exact_piece(p)) fn(p);
}

}  // namespace detail

inline bool member(const IntSetExpr& s, const BigInt& n) {
  if (s.exact_form().contains(n)) return true;
  for (const auto& p : s.pieces())
    if (!is_exact_piece(p) && detail::piece_member(p, n)) return true;
  return false;
}

/// Smallest member strictly greater than n.
inline std::optional<BigInt> next_member(const IntSetExpr& s, const BigInt& n) {
  auto best = detail::form_next_member(s.exact_form(), n);
  detail::for_oracle_pieces(s, [&](const Piece& p) { best = detail::min_opt(best, detail::piece_next_member(p, n)); });
  return best;
}

/// Largest member strictly less than n.
inline std::optional<BigInt> prev_member(const IntSetExpr& s, const BigInt& n) {
  auto best = detail::form_prev_member(s.exact_form(), n);
  detail::for_oracle_pieces(s, [&](const Piece& p) { best = detail::max_opt(best, detail::piece_prev_member(p, n)); });
  return best;
}

/// Smallest non-member strictly greater than n; nullopt when every integer above n is a member.
inline std::optional<BigInt> next_nonmember(const IntSetExpr& s, const BigInt& n) {
  BigInt x = n + 1;
  for (std::uint64_t hops = 0;; ++hops) {
    if (hops > detail::kMaxHops) throw BudgetError("next non-member search did not settle");
    bool moved = false;
    if (s.exact_form().contains(x)) {
      auto y = detail::form_next_nonmember(s.exact_form(), x - 1);
      if (!y) return std::nullopt;
      x = *y;
      moved = true;
    }
    for (const auto& p : s.pieces()) {
      if (is_exact_piece(p) || !detail::piece_member(p, x)) continue;
      auto y = detail::piece_next_nonmember(p, x - 1);
      if (!y) return std::nullopt;
      x = *y;
      moved = true;
    }
    if (!moved) return x;
  }
}

/// Largest non-member strictly less than n; nullopt when every integer below n is a member.
inline std::optional<BigInt> prev_nonmember(const IntSetExpr& s, const BigInt& n) {
  BigInt x = n - 1;
  for (std::uint64_t hops = 0;; ++hops) {
    if (hops > detail::kMaxHops) throw BudgetError("previous non-member search did not settle");
    bool moved = false;
    if (s.exact_form().contains(x)) {
      auto y = detail::form_prev_nonmember(s.exact_form(), x + 1);
      if (!y) return std::nullopt;
      x = *y;
      moved = true;
    }
    for (const auto& p : s.pieces()) {
      if (is_exact_piece(p) || !detail::piece_member(p, x)) continue;
      auto y = detail::piece_prev_nonmember(p, x + 1);
      if (!y) return std::nullopt;
      x = *y;
      moved = true;
    }
    if (!moved) return x;
  }
}

/// Members in the window as maximal runs. `budget_used` accumulates elementwise work across calls.
inline std::vector<Interval> runs(const IntSetExpr& s, const Window& w, BigInt& budget_used) {
  std::vector<Interval> out = detail::runs(s.exact_form(), w, budget_used);
  detail::for_oracle_pieces(s, [&](const Piece& p) {
    auto more = detail::piece_runs(p, w, budget_used);
    out.insert(out.end(), more.begin(), more.end());
  });
  return merge_runs(std::move(out));
}

inline std::vector<Interval> runs(const IntSetExpr& s, const Window& w) {
  BigInt used = 0;
  return runs(s, w, used);
}

/// Members of s in w, ascending.
inline std::vector<BigInt> enumerate(const IntSetExpr& s, const Window& w) {
  BigInt used = 0;
  std::vector<BigInt> out;
  for (const auto& r : runs(s, w, used)) {
    detail::charge(used, r.size(), "enumeration");
    for (BigInt x = r.lo; x <= r.hi; ++x) out.push_back(x);
  }
  return out;
}

inline SetBounds bounds(const IntSetExpr& s) {
  const detail::FormBounds fb = detail::bounds(s.exact_form());
  std::vector<SetBounds> parts;
  if (!fb.empty) parts.push_back({fb.inf, fb.sup, false});
  detail::for_oracle_pieces(s, [&](const Piece& p) {
    SetBounds b = detail::piece_bounds(p);
    if (!b.empty) parts.push_back(std::move(b));
  });
  SetBounds out;
  if (parts.empty()) {
    out.empty = true;
    return out;
  }
  out.inf = parts[0].inf;
  out.sup = parts[0].sup;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out.inf = out.inf && parts[i].inf ? std::min(*out.inf, *parts[i].inf) : std::optional<BigInt>{};
    out.sup = out.sup && parts[i].sup ? std::max(*out.sup, *parts[i].sup) : std::optional<BigInt>{};
  }
  return out;
}

/// Some T with [T, +inf) contained in s, when one piece alone guarantees it.
inline std::optional<BigInt> upper_cofinite(const IntSetExpr& s) {
  const auto& f = s.exact_form();
  std::optional<BigInt> best;
  bool all_up = true;
  std::optional<BigInt> T;
  for (const auto& u : f.up) {
    if (!u) {
      all_up = false;
      break;
    }
    T = detail::max_opt(T, u);
  }
  if (all_up) best = T;
  detail::for_oracle_pieces(s, [&](const Piece& p) { best = detail::min_opt(best, detail::piece_upper_cofinite(p)); });
  return best;
}

/// Some L with (-inf, L] contained in s, when one piece alone guarantees it.
inline std::optional<BigInt> lower_cofinite(const IntSetExpr& s) {
  const auto& f = s.exact_form();
  std::optional<BigInt> best;
  bool all_down = true;
  std::optional<BigInt> L;
  for (const auto& t : f.down) {
    if (!t) {
      all_down = false;
      break;
    }
    L = L && *L < *t ? L : std::optional<BigInt>(*t);
  }
  if (all_down) best = L;
  detail::for_oracle_pieces(s, [&](const Piece& p) { best = detail::max_opt(best, detail::piece_lower_cofinite(p)); });
  return best;
}

}  // namespace amc
