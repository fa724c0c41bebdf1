#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amc/setalg/query.hpp"

namespace amc {

/// Canonical residue table of an exact set.
inline detail::ResidueForm canonical_form(const IntSetExpr& s) {
  if (!s.is_exact()) throw UnsupportedError("operation needs an exact (AP-union) set");
  return detail::canonicalize(s.exact_form());
}

inline IntSetExpr from_form(const detail::ResidueForm& f) { return IntSetExpr::from_components(detail::to_components(f)); }

/// Canonical form of an exact set. Equal denoted sets give structurally equal results.
inline IntSetExpr normalize(const IntSetExpr& s) { return from_form(canonical_form(s)); }

inline bool same_set(const IntSetExpr& a, const IntSetExpr& b) { return canonical_form(a) == canonical_form(b); }

struct PointDeleteResult {
  IntSetExpr set;
  bool removed = false;
  std::string warning;  // set when n was not a member
};

inline detail::ResidueForm point_delete_form(const detail::ResidueForm& input, const BigInt& n) {
  detail::ResidueForm f = detail::canonicalize(input);
  if (f.points.erase(n)) return f;
  const std::size_t r = f.slot(n);
  const BigInt M(f.modulus);
  BigInt used = 0;
  if (f.is_line(r)) {
    f.up[r] = n + M;
    f.down[r] = n - M;
  } else if (f.up[r] && n >= *f.up[r]) {
    detail::charge(used, (n - *f.up[r]) / M, "point deletion");
    for (BigInt x = *f.up[r]; x < n; x += M) f.points.insert(x);
    f.up[r] = n + M;
  } else if (f.down[r] && n <= *f.down[r]) {
    detail::charge(used, (*f.down[r] - n) / M, "point deletion");
    for (BigInt x = *f.down[r]; x > n; x -= M) f.points.insert(x);
    f.down[r] = n - M;
  }
  return detail::canonicalize(f);
}

/// s with n removed; a non-member n leaves s unchanged and sets a warning.
inline PointDeleteResult point_delete(const IntSetExpr& s, const BigInt& n) {
  if (!s.is_exact()) throw UnsupportedError("point_delete needs an exact set");
  if (!s.exact_form().contains(n)) return {s, false, n.str() + " is not a member; nothing deleted"};
  return {from_form(point_delete_form(s.exact_form(), n)), true, {}};
}

inline IntSetExpr shift(const IntSetExpr& s, const BigInt& c);
inline IntSetExpr reflect(const IntSetExpr& s);

namespace detail {

inline Piece shift_piece(const Piece& p, const BigInt& c) {
  switch (p.index()) {
    case 0: {
      Finite f = std::get<Finite>(p);
      for (auto& v : f.values) v += c;
      return f;
    }
    case 1: return UpRay{std::get<UpRay>(p).start + c, std::get<UpRay>(p).step};
    case 2: return DownRay{std::get<DownRay>(p).start + c, std::get<DownRay>(p).step};
    case 3: return Line{std::get<Line>(p).residue + c, std::get<Line>(p).step};
    case 4: return amc::shift(std::get<PowerIntervalFamily>(p), c);
    case 5: return Transformed{1, c, std::make_shared<const IntSetExpr>(std::vector<Piece>{p})};
    default: {
      Transformed t = std::get<Transformed>(p);
      t.offset += c;
      return t;
    }
  }
}

inline Piece reflect_piece(const Piece& p) {
  switch (p.index()) {
    case 0: {
      const auto& v = std::get<Finite>(p).values;
      Finite f;
      for (auto it = v.rbegin(); it != v.rend(); ++it) f.values.push_back(-*it);
      return f;
    }
    case 1: return DownRay{-std::get<UpRay>(p).start, std::get<UpRay>(p).step};
    case 2: return UpRay{-std::get<DownRay>(p).start, std::get<DownRay>(p).step};
    case 3: return Line{-std::get<Line>(p).residue, std::get<Line>(p).step};
    case 4: return amc::reflect(std::get<PowerIntervalFamily>(p));
    case 5: return Transformed{-1, 0, std::make_shared<const IntSetExpr>(std::vector<Piece>{p})};
    default: {
      Transformed t = std::get<Transformed>(p);
      t.sign = -t.sign;
      t.offset = -t.offset;
      return t;
    }
  }
}

/// Identity transforms are unwrapped into their inner pieces.
inline void push_flat(std::vector<Piece>& out, Piece p) {
  if (auto* t = std::get_if<Transformed>(&p); t && t->sign == 1 && t->offset == 0) {
    for (const auto& q : t->of->pieces()) out.push_back(q);
    return;
  }
  out.push_back(std::move(p));
}

}  // namespace detail

/// {x + c : x in s}
inline IntSetExpr shift(const IntSetExpr& s, const BigInt& c) {
  std::vector<Piece> out;
  for (const auto& p : s.pieces()) detail::push_flat(out, detail::shift_piece(p, c));
  return IntSetExpr(std::move(out));
}

/// {-x : x in s}
inline IntSetExpr reflect(const IntSetExpr& s) {
  std::vector<Piece> out;
  for (const auto& p : s.pieces()) detail::push_flat(out, detail::reflect_piece(p));
  return IntSetExpr(std::move(out));
}

/// The set as a single power family (either direction) with its finite part folded into extras, if it is one.
inline std::optional<PowerIntervalFamily> as_family(const IntSetExpr& s) {
  const auto& f = s.exact_form();
  if (f.has_tails()) return std::nullopt;
  const Piece* only = nullptr;
  for (const auto& p : s.pieces()) {
    if (is_exact_piece(p)) continue;
    if (only) return std::nullopt;
    only = &p;
  }
  if (!only) return std::nullopt;
  std::optional<PowerIntervalFamily> fam;
  if (const auto* pf = std::get_if<PowerIntervalFamily>(only)) {
    fam = *pf;
  } else if (const auto* pc = std::get_if<PositiveComplement>(only)) {
    auto inner = as_family(*pc->of);
    if (!inner || !inner->upward()) return std::nullopt;
    auto fc = positive_complement(*inner);
    if (!fc.family) return std::nullopt;
    fam = *fc.family;
  } else {
    const auto& t = std::get<Transformed>(*only);
    auto inner = as_family(*t.of);
    if (!inner) return std::nullopt;
    fam = amc::shift(t.sign == 1 ? *inner : amc::reflect(*inner), t.offset);
  }
  std::set<BigInt> extra(fam->extraFinite.begin(), fam->extraFinite.end());
  extra.insert(f.points.begin(), f.points.end());
  fam->extraFinite.assign(extra.begin(), extra.end());
  validate(*fam);
  return fam;
}

inline std::optional<PowerIntervalFamily> as_upward_family(const IntSetExpr& s) {
  auto f = as_family(s);
  if (f && !f->upward()) return std::nullopt;
  return f;
}

/// Z+ \ s. Exact for exact input and for oracle sets bounded above; a family when s is an upward family;
/// otherwise an oracle wrapper.
inline IntSetExpr complement_positive(const IntSetExpr& s) {
  if (s.is_exact()) return from_form(detail::positive_complement(s.exact_form()));
  if (auto fam = as_upward_family(s)) {
    auto fc = positive_complement(*fam);
    if (fc.family) return IntSetExpr(*fc.family);
    return IntSetExpr(make_finite(std::move(fc.finite)));
  }
  if (s.pieces().size() == 1) {
    if (const auto* pc = std::get_if<PositiveComplement>(&s.pieces()[0])) {
      const SetBounds b = bounds(*pc->of);
      if (b.empty || (b.inf && *b.inf >= 1)) return *pc->of;
    }
  }
  const SetBounds b = bounds(s);
  if (b.empty) return IntSetExpr(UpRay{1, 1});
  if (b.sup) {
    std::vector<Piece> out;
    if (*b.sup >= 1) {
      const Window w{1, *b.sup};
      std::vector<BigInt> holes;
      BigInt used = 0;
      for (const auto& h : subtract_runs(w, runs(s, w, used))) {
        detail::charge(used, h.size(), "positive complement");
        for (BigInt x = h.lo; x <= h.hi; ++x) holes.push_back(x);
      }
      out.push_back(Finite{std::move(holes)});
    }
    out.push_back(UpRay{*b.sup < 1 ? BigInt(1) : BigInt(*b.sup + 1), 1});
    return normalize(IntSetExpr(std::move(out)));
  }
  return make_positive_complement(s);
}

/// {x + y : x in a, y in b} for exact a and b.
inline IntSetExpr sumset(const IntSetExpr& a, const IntSetExpr& b) {
  if (!a.is_exact() || !b.is_exact()) throw UnsupportedError("sumset needs exact operands; use window_sumset");
  return from_form(detail::canonicalize(detail::sumset(a.exact_form(), b.exact_form())));
}

/// a ∩ b for exact sets.
inline IntSetExpr intersection(const IntSetExpr& a, const IntSetExpr& b) {
  if (!a.is_exact() || !b.is_exact()) throw UnsupportedError("intersection needs exact operands");
  return from_form(detail::intersect(a.exact_form(), b.exact_form()));
}

/// a \ b for exact sets.
inline IntSetExpr difference(const IntSetExpr& a, const IntSetExpr& b) {
  if (!a.is_exact() || !b.is_exact()) throw UnsupportedError("difference needs exact operands");
  return from_form(detail::intersect(a.exact_form(), detail::complement_full(b.exact_form())));
}

enum class Soundness { Exact, PositiveOnly };

inline const char* to_string(Soundness s) { return s == Soundness::Exact ? "Exact" : "PositiveOnly"; }

struct WindowSumset {
  std::vector<BigInt> members;
  Soundness soundness = Soundness::Exact;
  Window searched;  // both summands were enumerated over this window (PositiveOnly only)
};

/// Members of a+b inside target. With an oracle operand, summands are searched within `radius` of the target.
inline WindowSumset window_sumset(const IntSetExpr& a, const IntSetExpr& b, const Window& target,
                                  std::optional<BigInt> radius = std::nullopt) {
  WindowSumset out;
  if (a.is_exact() && b.is_exact()) {
    out.members = enumerate(sumset(a, b), target);
    out.searched = target;
    return out;
  }
  out.soundness = Soundness::PositiveOnly;
  const BigInt width = target.hi - target.lo + 1;
  const BigInt R = radius ? *radius : std::max(BigInt(1024), BigInt(4 * width));
  out.searched = Window{target.lo - R, target.hi + R};
  BigInt used = 0;
  const auto ra = runs(a, out.searched, used);
  const auto rb = runs(b, out.searched, used);
  detail::charge(used, BigInt(ra.size()) * rb.size(), "window sumset");
  std::vector<Interval> hits;
  for (const auto& x : ra)
    for (const auto& y : rb) {
      BigInt lo = x.lo + y.lo, hi = x.hi + y.hi;
      if (lo < target.lo) lo = target.lo;
      if (hi > target.hi) hi = target.hi;
      if (lo <= hi) hits.push_back({lo, hi});
    }
  for (const auto& h : merge_runs(std::move(hits)))
    for (BigInt x = h.lo; x <= h.hi; ++x) out.members.push_back(x);
  return out;
}

}  // namespace amc
