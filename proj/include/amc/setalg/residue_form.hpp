#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "amc/bigint.hpp"
#include "amc/setalg/ap_component.hpp"
#include "amc/window.hpp"

namespace amc::detail {

/// Largest explicit finite part the exact tier will materialize.
inline constexpr std::uint64_t kMaxFinitePoints = std::uint64_t{1} << 20;

inline void charge(BigInt& used, const BigInt& more, const char* what) {
  used += more;
  if (used > BigInt(kMaxFinitePoints))
    throw BudgetError(std::string(what) + ": explicit finite part would exceed " + std::to_string(kMaxFinitePoints) +
                      " points");
}

/// A finite union of arithmetic progressions laid out on one modulus M.
///
/// For each residue r in [0, M): an optional up tail {u, u+M, ...} and an optional down tail {t, t-M, ...}
/// (u and t are congruent to r). A residue with both tails meeting is a full line and is stored as
/// up = r, down = r - M. `points` holds the remaining members. After `tidy` the points are disjoint
/// from the tails and no point sits directly next to a tail.
struct ResidueForm {
  std::int64_t modulus = 1;
  std::vector<std::optional<BigInt>> up{std::optional<BigInt>{}};
  std::vector<std::optional<BigInt>> down{std::optional<BigInt>{}};
  std::set<BigInt> points;

  static ResidueForm empty(std::int64_t m) {
    ResidueForm f;
    f.modulus = m;
    f.up.assign(static_cast<std::size_t>(m), std::nullopt);
    f.down.assign(static_cast<std::size_t>(m), std::nullopt);
    return f;
  }

  std::size_t slot(const BigInt& x) const { return static_cast<std::size_t>(floor_mod(x, modulus)); }

  bool is_line(std::size_t r) const { return up[r] && down[r] && *down[r] >= *up[r] - modulus; }

  bool tail_contains(const BigInt& n) const {
    const std::size_t r = slot(n);
    return (up[r] && n >= *up[r]) || (down[r] && n <= *down[r]);
  }

  bool contains(const BigInt& n) const { return tail_contains(n) || points.count(n) != 0; }

  void add_up(const BigInt& start) {
    auto& u = up[slot(start)];
    if (!u || start < *u) u = start;
  }
  void add_down(const BigInt& top) {
    auto& t = down[slot(top)];
    if (!t || top > *t) t = top;
  }

  bool has_tails() const {
    for (std::size_t r = 0; r < up.size(); ++r)
      if (up[r] || down[r]) return true;
    return false;
  }

  bool operator==(const ResidueForm&) const = default;
};

inline std::int64_t component_step(const ApComponent& c) {
  return std::visit(
      [](const auto& x) -> std::int64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Finite>)
          return 1;
        else
          return step_to_int(x.step);
      },
      c);
}

/// Adds a component to a form whose modulus is a multiple of the component step.
inline void add_component(ResidueForm& f, const ApComponent& c) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Finite>) {
          f.points.insert(x.values.begin(), x.values.end());
        } else {
          const std::int64_t s = step_to_int(x.step);
          const std::int64_t reps = f.modulus / s;
          for (std::int64_t j = 0; j < reps; ++j) {
            if constexpr (std::is_same_v<T, UpRay>) {
              f.add_up(x.start + BigInt(s) * j);
            } else if constexpr (std::is_same_v<T, DownRay>) {
              f.add_down(x.start - BigInt(s) * j);
            } else {
              const BigInt v = x.residue + BigInt(s) * j;
              f.add_up(v);
              f.add_down(v - f.modulus);
            }
          }
        }
      },
      c);
}

/// Re-expresses f on a multiple of its modulus.
inline ResidueForm lift(const ResidueForm& f, std::int64_t m) {
  if (m == f.modulus) return f;
  if (m % f.modulus != 0) throw PreconditionError("lift target must be a multiple of the modulus");
  ResidueForm g = ResidueForm::empty(m);
  const std::int64_t q = m / f.modulus;
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    for (std::int64_t j = 0; j < q; ++j) {
      if (f.up[r]) g.add_up(*f.up[r] + BigInt(f.modulus) * j);
      if (f.down[r]) g.add_down(*f.down[r] - BigInt(f.modulus) * j);
    }
  }
  g.points = f.points;
  return g;
}

/// Absorbs points adjacent to tails, canonicalizes full lines, drops covered points.
inline void tidy(ResidueForm& f) {
  const std::int64_t m = f.modulus;
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    auto& u = f.up[r];
    auto& t = f.down[r];
    if (u)
      while (f.points.count(*u - m)) {
        f.points.erase(*u - m);
        *u -= m;
        if (t && *t >= *u - m) break;
      }
    if (t)
      while (f.points.count(*t + m)) {
        f.points.erase(*t + m);
        *t += m;
        if (u && *t >= *u - m) break;
      }
    if (f.is_line(r)) {
      u = BigInt(static_cast<std::int64_t>(r));
      t = BigInt(static_cast<std::int64_t>(r) - m);
    }
  }
  for (auto it = f.points.begin(); it != f.points.end();) {
    if (f.tail_contains(*it))
      it = f.points.erase(it);
    else
      ++it;
  }
}

inline ResidueForm from_components(std::span<const ApComponent> comps) {
  std::int64_t m = 1;
  for (const auto& c : comps) m = lcm64(m, component_step(c));
  ResidueForm f = ResidueForm::empty(m);
  for (const auto& c : comps) add_component(f, c);
  tidy(f);
  return f;
}

inline ResidueForm unite(const ResidueForm& a, const ResidueForm& b) {
  const std::int64_t m = lcm64(a.modulus, b.modulus);
  ResidueForm out = lift(a, m);
  const ResidueForm bb = lift(b, m);
  for (std::size_t r = 0; r < out.up.size(); ++r) {
    if (bb.up[r]) out.add_up(*bb.up[r]);
    if (bb.down[r]) out.add_down(*bb.down[r]);
  }
  out.points.insert(bb.points.begin(), bb.points.end());
  tidy(out);
  return out;
}

/// Unique representation of the denoted set: minimal modulus whose tail pattern is periodic, maximal tails,
/// everything else explicit. Throws BudgetError if the explicit part would be too large.
inline ResidueForm canonicalize(const ResidueForm& input) {
  ResidueForm f = input;
  tidy(f);
  const std::int64_t m = f.modulus;
  auto periodic = [&](std::int64_t d) {
    for (std::int64_t r = 0; r + d < m; ++r) {
      const auto i = static_cast<std::size_t>(r), j = static_cast<std::size_t>(r + d);
      if (f.up[i].has_value() != f.up[j].has_value()) return false;
      if (f.down[i].has_value() != f.down[j].has_value()) return false;
    }
    return true;
  };
  std::int64_t d = m;
  for (std::int64_t c = 1; c < m; ++c)
    if (m % c == 0 && periodic(c)) {
      d = c;
      break;
    }

  ResidueForm g = ResidueForm::empty(d);
  std::vector<bool> full(static_cast<std::size_t>(d), false);
  for (std::int64_t rho = 0; rho < d; ++rho) {
    const auto ri = static_cast<std::size_t>(rho);
    std::optional<BigInt> A, B;
    bool all_line = true;
    for (std::int64_t r = rho; r < m; r += d) {
      const auto i = static_cast<std::size_t>(r);
      if (f.is_line(i)) continue;
      all_line = false;
      if (f.up[i] && (!A || *f.up[i] > *A)) A = f.up[i];
      if (f.down[i] && (!B || *f.down[i] < *B)) B = f.down[i];
    }
    if (all_line) {
      if (f.up[ri]) full[ri] = true;  // every residue of the class is a line
      if (full[ri]) {
        g.up[ri] = BigInt(rho);
        g.down[ri] = BigInt(rho - d);
      }
      continue;
    }
    bool is_full = false;
    BigInt a, b;
    if (A) {
      a = *A;
      for (;;) {
        const BigInt x = a - d;
        if (B && x <= *B) {
          is_full = true;
          break;
        }
        if (!f.contains(x)) break;
        a = x;
      }
    }
    if (!is_full && B) {
      b = *B;
      for (;;) {
        const BigInt x = b + d;
        if (A && x >= a) {
          is_full = true;
          break;
        }
        if (!f.contains(x)) break;
        b = x;
      }
    }
    if (is_full) {
      full[ri] = true;
      g.up[ri] = BigInt(rho);
      g.down[ri] = BigInt(rho - d);
      continue;
    }
    if (A) g.up[ri] = a;
    if (B) g.down[ri] = b;
  }

  // Explicit part: old points and old tail elements the new tails do not cover.
  BigInt used = 0;
  for (const auto& pt : f.points)
    if (!g.tail_contains(pt)) {
      charge(used, 1, "canonicalize");
      g.points.insert(pt);
    }
  const BigInt M(m);
  for (std::int64_t r = 0; r < m; ++r) {
    const auto i = static_cast<std::size_t>(r);
    const auto ci = static_cast<std::size_t>(r % d);
    if (full[ci]) continue;
    const auto& nu = g.up[ci];
    const auto& nd = g.down[ci];
    auto emit_range = [&](BigInt from, const BigInt& to_exclusive) {
      // class-r elements x with from <= x < to_exclusive, from ≡ r (mod m)
      if (from >= to_exclusive) return;
      charge(used, ceil_div(to_exclusive - from, M), "canonicalize");
      for (BigInt x = from; x < to_exclusive; x += M) g.points.insert(x);
    };
    if (f.is_line(i)) {
      // Both new tails exist here; members strictly between them are explicit.
      const BigInt first = *nd + 1 + floor_mod(BigInt(r) - (*nd + 1), M);
      emit_range(first, *nu);
      continue;
    }
    if (f.up[i] && nu) emit_range(*f.up[i], *nu);
    if (f.down[i] && nd) {
      // elements t, t-M, ... strictly above new down top
      const BigInt& t = *f.down[i];
      if (t > *nd) {
        const BigInt lowest = t - floor_div(t - *nd - 1, M) * M;
        emit_range(lowest, t + 1);
      }
    }
  }
  tidy(g);
  return g;
}

inline std::vector<ApComponent> to_components(const ResidueForm& f) {
  std::vector<ApComponent> out;
  if (!f.points.empty()) out.push_back(Finite{{f.points.begin(), f.points.end()}});
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r)
    if (f.is_line(r)) out.push_back(Line{BigInt(static_cast<std::int64_t>(r)), M});
  for (std::size_t r = 0; r < f.up.size(); ++r)
    if (!f.is_line(r) && f.down[r]) out.push_back(DownRay{*f.down[r], M});
  for (std::size_t r = 0; r < f.up.size(); ++r)
    if (!f.is_line(r) && f.up[r]) out.push_back(UpRay{*f.up[r], M});
  return out;
}

inline ResidueForm sumset(const ResidueForm& a, const ResidueForm& b) {
  const std::int64_t m = lcm64(a.modulus, b.modulus);
  const ResidueForm x = lift(a, m);
  const ResidueForm y = lift(b, m);
  ResidueForm out = ResidueForm::empty(m);
  const auto n = static_cast<std::size_t>(m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (x.up[r] && y.up[s]) out.add_up(*x.up[r] + *y.up[s]);
      if (x.down[r] && y.down[s]) out.add_down(*x.down[r] + *y.down[s]);
      if ((x.up[r] && y.down[s]) || (x.down[r] && y.up[s])) {
        const BigInt res = floor_mod(BigInt(static_cast<std::int64_t>(r + s)), BigInt(m));
        out.add_up(res);
        out.add_down(res - m);
      }
    }
  }
  auto tails_plus_points = [&](const ResidueForm& tails, const ResidueForm& pts) {
    for (const auto& p : pts.points)
      for (std::size_t r = 0; r < n; ++r) {
        if (tails.up[r]) out.add_up(*tails.up[r] + p);
        if (tails.down[r]) out.add_down(*tails.down[r] + p);
      }
  };
  tails_plus_points(x, y);
  tails_plus_points(y, x);
  BigInt used = 0;
  charge(used, BigInt(x.points.size()) * y.points.size(), "sumset");
  for (const auto& p : x.points)
    for (const auto& q : y.points) out.points.insert(p + q);
  tidy(out);
  return out;
}

/// Z+ \ f.
inline ResidueForm positive_complement(const ResidueForm& input) {
  const ResidueForm f = canonicalize(input);
  const std::int64_t d = f.modulus;
  const BigInt D(d);
  ResidueForm out = ResidueForm::empty(d);
  std::map<std::int64_t, BigInt> class_max;
  for (const auto& p : f.points) {
    const std::int64_t r = floor_mod(p, d);
    auto it = class_max.find(r);
    if (it == class_max.end() || p > it->second) class_max[r] = p;
  }
  BigInt used = 0;
  for (std::int64_t rho = 0; rho < d; ++rho) {
    const auto ri = static_cast<std::size_t>(rho);
    if (f.is_line(ri)) continue;
    const BigInt first = 1 + floor_mod(BigInt(rho) - 1, D);
    BigInt stop;  // exclusive end of the explicit scan
    if (f.up[ri]) {
      stop = *f.up[ri];
    } else {
      std::optional<BigInt> top = f.down[ri];
      if (auto it = class_max.find(rho); it != class_max.end() && (!top || it->second > *top)) top = it->second;
      stop = first;
      if (top && *top >= first) stop = *top + D;
      out.up[ri] = stop;
    }
    if (stop > first) {
      charge(used, ceil_div(stop - first, D), "positive complement");
      for (BigInt x = first; x < stop; x += D)
        if (!f.contains(x)) out.points.insert(x);
    }
  }
  tidy(out);
  return canonicalize(out);
}

/// Maximal runs of one residue class, in steps of the modulus. A missing end means the run is infinite.
struct ClassSeg {
  std::optional<BigInt> lo;
  std::optional<BigInt> hi;
};

inline std::vector<ClassSeg> class_segments(const ResidueForm& f, std::size_t r) {
  const BigInt M(f.modulus);
  std::vector<ClassSeg> segs;
  if (f.down[r]) segs.push_back({std::nullopt, *f.down[r]});
  for (const auto& p : f.points)
    if (f.slot(p) == r) {
      if (!segs.empty() && segs.back().hi && *segs.back().hi + M == p)
        segs.back().hi = p;
      else
        segs.push_back({p, p});
    }
  if (f.up[r]) {
    if (!segs.empty() && segs.back().hi && *segs.back().hi + M >= *f.up[r])
      segs.back().hi = std::nullopt;
    else
      segs.push_back({*f.up[r], std::nullopt});
  }
  return segs;
}

inline void emit_segment(ResidueForm& out, std::size_t r, const ClassSeg& s, BigInt& used) {
  const BigInt M(out.modulus);
  if (!s.lo && !s.hi) {
    out.up[r] = BigInt(static_cast<std::int64_t>(r));
    out.down[r] = BigInt(static_cast<std::int64_t>(r)) - M;
  } else if (!s.lo) {
    out.add_down(*s.hi);
  } else if (!s.hi) {
    out.add_up(*s.lo);
  } else {
    charge(used, (*s.hi - *s.lo) / M + 1, "set algebra");
    for (BigInt x = *s.lo; x <= *s.hi; x += M) out.points.insert(x);
  }
}

/// Z \ f.
inline ResidueForm complement_full(const ResidueForm& input) {
  ResidueForm f = input;
  tidy(f);
  const BigInt M(f.modulus);
  ResidueForm out = ResidueForm::empty(f.modulus);
  BigInt used = 0;
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    const auto segs = class_segments(f, r);
    std::optional<BigInt> cursor;  // lowest class element not yet accounted for; nullopt = -inf
    bool open = true;
    for (const auto& s : segs) {
      if (!s.lo && !s.hi) {
        open = false;
        break;
      }
      if (!s.lo) {
        cursor = *s.hi + M;
        continue;
      }
      if (!cursor || *cursor <= *s.lo - M) emit_segment(out, r, {cursor, *s.lo - M}, used);
      if (!s.hi) {
        open = false;
        break;
      }
      cursor = *s.hi + M;
    }
    if (open) emit_segment(out, r, {cursor, std::nullopt}, used);
  }
  tidy(out);
  return canonicalize(out);
}

/// a ∩ b.
inline ResidueForm intersect(const ResidueForm& a, const ResidueForm& b) {
  const std::int64_t m = lcm64(a.modulus, b.modulus);
  ResidueForm x = lift(a, m), y = lift(b, m);
  tidy(x);
  tidy(y);
  ResidueForm out = ResidueForm::empty(m);
  BigInt used = 0;
  auto less_lo = [](const std::optional<BigInt>& p, const std::optional<BigInt>& q) {
    return !q ? false : (!p || *p < *q);  // -inf smallest
  };
  auto less_hi = [](const std::optional<BigInt>& p, const std::optional<BigInt>& q) {
    return !p ? false : (!q || *p < *q);  // +inf largest
  };
  for (std::size_t r = 0; r < out.up.size(); ++r) {
    const auto sa = class_segments(x, r), sb = class_segments(y, r);
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
      const auto lo = less_lo(sa[i].lo, sb[j].lo) ? sb[j].lo : sa[i].lo;
      const bool a_first = less_hi(sa[i].hi, sb[j].hi);
      const auto hi = a_first ? sa[i].hi : sb[j].hi;
      if (!lo || !hi || *lo <= *hi) emit_segment(out, r, {lo, hi}, used);
      if (a_first)
        ++i;
      else
        ++j;
    }
  }
  tidy(out);
  return canonicalize(out);
}

/// True iff the two sets share an element. Works lane by lane; independent of `sumset`.
inline bool intersects(const ResidueForm& a, const ResidueForm& b) {
  for (const auto& p : a.points)
    if (b.contains(p)) return true;
  for (const auto& p : b.points)
    if (a.contains(p)) return true;
  const std::int64_t m = lcm64(a.modulus, b.modulus);
  const ResidueForm x = lift(a, m);
  const ResidueForm y = lift(b, m);
  for (std::size_t r = 0; r < x.up.size(); ++r) {
    if (x.up[r] && y.up[r]) return true;
    if (x.down[r] && y.down[r]) return true;
    if (x.up[r] && y.down[r] && *x.up[r] <= *y.down[r]) return true;
    if (x.down[r] && y.up[r] && *y.up[r] <= *x.down[r]) return true;
  }
  return false;
}

struct FormBounds {
  std::optional<BigInt> inf;  // nullopt: unbounded below (or empty set, see `empty`)
  std::optional<BigInt> sup;
  bool empty = false;
};

inline FormBounds bounds(const ResidueForm& f) {
  FormBounds b;
  bool any_down = false, any_up = false;
  std::optional<BigInt> lo, hi;
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    if (f.up[r]) {
      any_up = true;
      if (!lo || *f.up[r] < *lo) lo = f.up[r];
    }
    if (f.down[r]) {
      any_down = true;
      if (!hi || *f.down[r] > *hi) hi = f.down[r];
    }
  }
  if (!f.points.empty()) {
    if (!lo || *f.points.begin() < *lo) lo = *f.points.begin();
    if (!hi || *f.points.rbegin() > *hi) hi = *f.points.rbegin();
  }
  b.empty = !any_up && !any_down && f.points.empty();
  if (!any_down) b.inf = lo;
  if (!any_up) b.sup = hi;
  return b;
}

/// Members in the window, as maximal runs of consecutive integers.
inline std::vector<Interval> runs(const ResidueForm& f, const Window& w, BigInt& budget_used) {
  std::vector<Interval> out;
  for (auto it = f.points.lower_bound(w.lo); it != f.points.end() && *it <= w.hi; ++it) out.push_back({*it, *it});
  const BigInt M(f.modulus);
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    const BigInt R(static_cast<std::int64_t>(r));
    auto emit = [&](BigInt lo, BigInt hi) {
      if (lo < w.lo) lo = w.lo;
      if (hi > w.hi) hi = w.hi;
      if (hi < lo) return;
      if (f.modulus == 1) {
        out.push_back({lo, hi});
        return;
      }
      const BigInt first = lo + floor_mod(R - lo, M);
      if (first > hi) return;
      charge(budget_used, floor_div(hi - first, M) + 1, "enumeration");
      for (BigInt x = first; x <= hi; x += M) out.push_back({x, x});
    };
    if (f.is_line(r)) {
      emit(w.lo, w.hi);
      continue;
    }
    if (f.up[r]) emit(*f.up[r], w.hi);
    if (f.down[r]) emit(w.lo, *f.down[r]);
  }
  return merge_runs(std::move(out));
}

}  // namespace amc::detail
