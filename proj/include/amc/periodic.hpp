#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "amc/complement.hpp"

namespace amc {

/// Y1 = D + m k N.
struct Progressions {
  std::vector<std::int64_t> D;
  std::int64_t k = 1;
  bool operator==(const Progressions&) const = default;
};

/// W = shift + ((m N + Xm) ∪ Y0 ∪ Y1).
struct EventuallyPeriodicProfile {
  std::int64_t m = 1;
  std::vector<std::int64_t> Xm;
  std::vector<BigInt> Y0;
  std::variant<std::vector<BigInt>, Progressions> Y1;
  BigInt shift = 0;

  bool y1_finite() const { return std::holds_alternative<std::vector<BigInt>>(Y1); }
  bool operator==(const EventuallyPeriodicProfile&) const = default;
};

inline constexpr std::int64_t kMaxPeriod = std::int64_t{1} << 20;
inline constexpr int kDefaultModularLimit = 22;

/// Residues of Y1 modulo m.
inline std::vector<std::int64_t> y1_residues(const EventuallyPeriodicProfile& p) {
  std::set<std::int64_t> r;
  if (p.y1_finite()) {
    for (const auto& y : std::get<std::vector<BigInt>>(p.Y1)) r.insert(floor_mod(y, p.m));
  } else {
    for (auto d : std::get<Progressions>(p.Y1).D) r.insert(floor_mod(d, p.m));
  }
  return {r.begin(), r.end()};
}

inline void validate(const EventuallyPeriodicProfile& p) {
  if (p.m < 1 || p.m > kMaxPeriod) throw ValidationError("period m must be in [1, 2^20]");
  std::set<std::int64_t> X;
  for (auto x : p.Xm) {
    if (x < 0 || x >= p.m) throw ValidationError("Xm residue " + std::to_string(x) + " is outside [0, m-1]");
    if (!X.insert(x).second) throw ValidationError("Xm residue " + std::to_string(x) + " repeated");
  }
  for (const auto& y : p.Y0) {
    if (y >= 0) throw ValidationError("Y0 element " + y.str() + " is not negative");
    if (!X.count(floor_mod(y, p.m)))
      throw ValidationError("Y0 element " + y.str() + " has residue " + std::to_string(floor_mod(y, p.m)) +
                            " outside Xm");
  }
  if (const auto* pr = std::get_if<Progressions>(&p.Y1)) {
    if (pr->k < 1) throw ValidationError("progression factor k must be positive");
    if (BigInt(p.m) * pr->k > BigInt(kMaxPeriod)) throw BudgetError("m*k too large");
    for (auto d : pr->D)
      if (d < 0 || d >= p.m) throw ValidationError("D residue " + std::to_string(d) + " is outside [0, m-1]");
  }
  for (auto r : y1_residues(p))
    if (X.count(r)) throw ValidationError("Y1 residue " + std::to_string(r) + " meets Xm");
}

/// The set a profile denotes.
inline IntSetExpr reconstruct(const EventuallyPeriodicProfile& p) {
  validate(p);
  std::vector<Piece> out;
  for (auto x : p.Xm) out.push_back(UpRay{x + p.shift, p.m});
  std::vector<BigInt> fin;
  for (const auto& y : p.Y0) fin.push_back(y + p.shift);
  if (const auto* ys = std::get_if<std::vector<BigInt>>(&p.Y1)) {
    for (const auto& y : *ys) fin.push_back(y + p.shift);
  } else {
    const auto& pr = std::get<Progressions>(p.Y1);
    for (auto d : pr.D) out.push_back(UpRay{d + p.shift, BigInt(p.m) * pr.k});
  }
  out.push_back(make_finite(std::move(fin)));
  return IntSetExpr(std::move(out));
}

/// Splits an exact set bounded below, with at least one upward tail, into the periodic shape.
/// m is the minimal period of the tail pattern; the shift is the smallest that keeps every tail start at or
/// below m-1, and no smaller than the lowest tail start.
inline EventuallyPeriodicProfile decompose(const IntSetExpr& s) {
  if (!s.is_exact()) throw UnsupportedError("decompose needs an exact set; oracle parts are not eventually periodic");
  const auto f = canonical_form(s);
  const auto b = detail::bounds(f);
  if (b.empty) throw PreconditionError("empty set has no periodic structure");
  if (!b.inf) throw PreconditionError("set is unbounded below");
  std::optional<BigInt> lo, hi;
  for (const auto& u : f.up) {
    if (!u) continue;
    lo = detail::min_opt(lo, u);
    hi = detail::max_opt(hi, u);
  }
  if (!lo) throw PreconditionError("finite set: no upward periodic part");
  EventuallyPeriodicProfile p;
  p.m = f.modulus;
  const BigInt M(p.m);
  p.shift = std::max(*lo, BigInt(*hi - M + 1));
  for (std::size_t r = 0; r < f.up.size(); ++r)
    if (f.up[r]) p.Xm.push_back(floor_mod(*f.up[r] - p.shift, p.m));
  std::sort(p.Xm.begin(), p.Xm.end());
  std::vector<BigInt> y1;
  const std::set<std::int64_t> X(p.Xm.begin(), p.Xm.end());
  for (const auto& pt : f.points) {
    const BigInt v = pt - p.shift;
    if (X.count(floor_mod(v, p.m)))
      p.Y0.push_back(v);  // below its tail, hence negative
    else
      y1.push_back(v);
  }
  // Tail elements between a tail start and its first nonnegative class member also belong to Y0.
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    if (!f.up[r]) continue;
    for (BigInt v = *f.up[r] - p.shift; v < 0; v += M) p.Y0.push_back(v);
  }
  std::sort(p.Y0.begin(), p.Y0.end());
  p.Y1 = std::move(y1);
  validate(p);
  return p;
}

/// Smallest d dividing m with X + d = X modulo m.
inline std::int64_t residue_period(const std::set<std::int64_t>& X, std::int64_t m) {
  for (std::int64_t d = 1; d < m; ++d) {
    if (m % d) continue;
    bool ok = true;
    for (auto x : X) ok = ok && X.count((x + d) % m);
    if (ok) return d;
  }
  return m;
}

/// With Y1 empty, the same set re-read as (m' N + X') ∪ Y0 ∪ (D + m' N), D nonempty, on a multiple m' of m.
inline std::optional<EventuallyPeriodicProfile> as_progression_profile(const EventuallyPeriodicProfile& p) {
  if (!p.y1_finite()) return p;
  if (!std::get<std::vector<BigInt>>(p.Y1).empty() || p.Xm.empty()) return std::nullopt;
  for (std::int64_t j = 1; j <= static_cast<std::int64_t>(p.Y0.size()) + 1; ++j) {
    const std::int64_t mm = p.m * j;
    if (mm > kMaxPeriod) return std::nullopt;
    std::set<std::int64_t> lifted, y0r;
    for (auto x : p.Xm)
      for (std::int64_t t = 0; t < j; ++t) lifted.insert(x + p.m * t);
    for (const auto& y : p.Y0) y0r.insert(floor_mod(y, mm));
    // One free class moves to D; the one whose removal leaves the most regular X' is preferred.
    std::optional<std::int64_t> pick;
    std::int64_t best = 0;
    for (auto r : lifted) {
      if (y0r.count(r)) continue;
      std::set<std::int64_t> rest = lifted;
      rest.erase(r);
      const auto per = residue_period(rest, mm);
      if (!pick || per < best) {
        pick = r;
        best = per;
      }
    }
    if (!pick) continue;
    lifted.erase(*pick);
    EventuallyPeriodicProfile q;
    q.m = mm;
    q.Xm.assign(lifted.begin(), lifted.end());
    q.Y0 = p.Y0;
    q.Y1 = Progressions{{*pick}, 1};
    q.shift = p.shift;
    return q;
  }
  return std::nullopt;
}

struct ModularCheckResult {
  std::vector<std::int64_t> C;
  bool conditionA = false;
  bool conditionB = false;
  std::optional<std::int64_t> failingResidue;
  std::vector<std::pair<std::int64_t, std::int64_t>> blockingPairs;  // (c', x) with c + y ≡ c' + x
};

namespace detail {

inline std::vector<std::int64_t> checked_C(const EventuallyPeriodicProfile& p, std::vector<std::int64_t> C) {
  for (auto c : C)
    if (c < 0 || c >= p.m) throw ValidationError("C element " + std::to_string(c) + " is outside [0, m-1]");
  std::sort(C.begin(), C.end());
  C.erase(std::unique(C.begin(), C.end()), C.end());
  return C;
}

/// Shared body of the D and E checks. `e_form`: exclude c itself and let x range over Xm ∪ Y1.
inline ModularCheckResult modular_check(const EventuallyPeriodicProfile& p, std::vector<std::int64_t> C_in, bool e_form) {
  validate(p);
  ModularCheckResult out;
  out.C = checked_C(p, std::move(C_in));
  const auto m = p.m;
  const auto Y = y1_residues(p);
  std::vector<std::int64_t> XY = p.Xm;
  XY.insert(XY.end(), Y.begin(), Y.end());

  std::vector<bool> cover(static_cast<std::size_t>(m), false);
  for (auto c : out.C)
    for (auto x : XY) cover[static_cast<std::size_t>((c + x) % m)] = true;
  out.conditionA = std::all_of(cover.begin(), cover.end(), [](bool b) { return b; });

  const std::vector<std::int64_t>& xs = e_form ? XY : p.Xm;
  out.conditionB = true;
  for (auto c : out.C) {
    // blocker[r] = some (c', x) with c' + x ≡ r
    std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> blocker(static_cast<std::size_t>(m));
    for (auto c2 : out.C) {
      if (e_form && c2 == c) continue;
      for (auto x : xs) {
        auto& slot = blocker[static_cast<std::size_t>((c2 + x) % m)];
        if (!slot) slot = std::make_pair(c2, x);
      }
    }
    bool ok = false;
    for (auto y : Y)
      if (!blocker[static_cast<std::size_t>((c + y) % m)]) {
        ok = true;
        break;
      }
    if (!ok) {
      out.conditionB = false;
      out.failingResidue = c;
      for (auto y : Y) out.blockingPairs.push_back(*blocker[static_cast<std::size_t>((c + y) % m)]);
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Necessary condition: (a) C + (Xm ∪ Y1) covers Z/m; (b) each c has y with c + y outside C + Xm.
inline ModularCheckResult check_condition_D(const EventuallyPeriodicProfile& p, std::vector<std::int64_t> C) {
  return detail::modular_check(p, std::move(C), false);
}

/// Sufficient condition: as D but (b) avoids (C \ {c}) + (Xm ∪ Y1).
inline ModularCheckResult check_condition_E(const EventuallyPeriodicProfile& p, std::vector<std::int64_t> C) {
  return detail::modular_check(p, std::move(C), true);
}

enum class ModularOutcome { EWitness, DInfeasible, Undetermined };

inline const char* to_string(ModularOutcome o) {
  switch (o) {
    case ModularOutcome::EWitness: return "EWitness";
    case ModularOutcome::DInfeasible: return "DInfeasible";
    case ModularOutcome::Undetermined: return "Undetermined";
  }
  return "?";
}

struct ModularSearchResult {
  ModularOutcome outcome = ModularOutcome::Undetermined;
  std::vector<std::int64_t> witness;                   // EWitness
  std::vector<std::vector<std::int64_t>> d_feasible;   // Undetermined: D holds, E fails (first few)
  std::uint64_t examined = 0;
};

inline constexpr std::size_t kMaxReportedFeasible = 64;

/// Every C ⊆ [0, m-1], smallest bitmask first. No pruning. Needs a finite Y1.
inline ModularSearchResult search_modular_C(const EventuallyPeriodicProfile& p, int m_limit = kDefaultModularLimit) {
  validate(p);
  if (!p.y1_finite()) throw PreconditionError("modular search needs a finite Y1; use theorem2_verdict");
  if (m_limit > 30) m_limit = 30;
  if (p.m > m_limit)
    throw BudgetError("m = " + std::to_string(p.m) + " exceeds the modular search limit " + std::to_string(m_limit));
  const int m = static_cast<int>(p.m);
  const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1u);
  auto rot = [&](std::uint32_t mask, int by) -> std::uint32_t {
    if (by == 0) return mask;
    return ((mask << by) | (mask >> (m - by))) & full;
  };
  std::uint32_t xm = 0, ym = 0;
  for (auto x : p.Xm) xm |= 1u << x;
  for (auto y : y1_residues(p)) ym |= 1u << y;
  const std::uint32_t xym = xm | ym;

  ModularSearchResult out;
  bool any_d = false;
  for (std::uint64_t C = 1; C <= full; ++C) {
    ++out.examined;
    std::uint32_t cx = 0, cxy = 0;
    for (int c = 0; c < m; ++c)
      if (C >> c & 1u) {
        cx |= rot(xm, c);
        cxy |= rot(xym, c);
      }
    if (cxy != full) continue;  // condition (a)
    bool d_ok = true, e_ok = true;
    for (int c = 0; c < m && (d_ok || e_ok); ++c) {
      if (!(C >> c & 1u)) continue;
      std::uint32_t others = 0;
      for (int c2 = 0; c2 < m; ++c2)
        if (c2 != c && (C >> c2 & 1u)) others |= rot(xym, c2);
      const std::uint32_t targets = rot(ym, c);
      if (!(targets & ~cx)) d_ok = false;
      if (!(targets & ~others)) e_ok = false;
    }
    if (e_ok) {
      out.outcome = ModularOutcome::EWitness;
      for (int c = 0; c < m; ++c)
        if (C >> c & 1u) out.witness.push_back(c);
      return out;
    }
    if (d_ok) {
      any_d = true;
      if (out.d_feasible.size() < kMaxReportedFeasible) {
        std::vector<std::int64_t> v;
        for (int c = 0; c < m; ++c)
          if (C >> c & 1u) v.push_back(c);
        out.d_feasible.push_back(std::move(v));
      }
    }
  }
  out.outcome = any_d ? ModularOutcome::Undetermined : ModularOutcome::DInfeasible;
  return out;
}

/// No minimal complement when Y1 = D + m k N with D nonempty; otherwise Inapplicable.
inline Verdict theorem2_verdict(const EventuallyPeriodicProfile& p) {
  validate(p);
  Verdict v;
  const auto* pr = std::get_if<Progressions>(&p.Y1);
  if (!pr) {
    v.status = Status::Inapplicable;
    v.note = "Y1 is finite; route to the modular search";
    return v;
  }
  if (pr->D.empty()) {
    v.status = Status::Inapplicable;
    v.note = "D is empty";
    return v;
  }
  v.status = Status::CertifiedNo;
  v.note = "Y1 = D + " + std::to_string(p.m * pr->k) + "N: no minimal complement";
  return v;
}

/// Greedy complement of W on [-N, N] and the removability of its elements in the interior [-N/2, N/2].
/// W is first shifted to inf W = 1.
struct GreedyCorroboration {
  std::size_t size = 0;
  std::size_t interior = 0;
  std::size_t interior_removable = 0;
  bool all_interior_removable() const { return interior == interior_removable; }
};

inline GreedyCorroboration greedy_corroboration(const IntSetExpr& w_in, const BigInt& N) {
  const SetBounds b = bounds(w_in);
  if (b.empty || !b.inf) throw PreconditionError("W must be nonempty and bounded below");
  const IntSetExpr w = shift(w_in, 1 - *b.inf);
  const Window target{-N, N};
  const auto c = greedy_complement(w, target);
  const auto cov = window_coverage(c, w, target);
  GreedyCorroboration out;
  out.size = c.size();
  const BigInt half = N / 2;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < -half || c[i] > half) continue;
    ++out.interior;
    bool needed = false;
    for (auto idx : cov.hits[i]) needed = needed || cov.count[idx] == 1;
    if (!needed) ++out.interior_removable;
  }
  return out;
}

/// (C + mZ) sliced to what can reach [-N, N], checked for coverage and for one element only it can replace.
struct PeriodicSliceCheck {
  bool covers = false;
  std::optional<BigInt> uncovered;
  std::optional<BigInt> essential_c, essential_n;
};

inline PeriodicSliceCheck periodic_slice_check(const EventuallyPeriodicProfile& p, const std::vector<std::int64_t>& C,
                                               const BigInt& N) {
  const IntSetExpr w = reconstruct(p);
  const SetBounds b = bounds(w);
  if (b.empty || !b.inf) throw PreconditionError("profile set must be nonempty and bounded below");
  BigInt reach = p.m - 1;
  if (const auto* ys = std::get_if<std::vector<BigInt>>(&p.Y1))
    for (const auto& y : *ys) reach = std::max(reach, y);
  const Window target{-N, N};
  const BigInt lo = -N - (p.shift + reach), hi = N - *b.inf;
  std::vector<BigInt> slice;
  for (auto c : C)
    for (BigInt v = lo + floor_mod(BigInt(c) - lo, p.m); v <= hi; v += p.m) slice.push_back(v);
  std::sort(slice.begin(), slice.end());
  const auto cov = window_coverage(slice, w, target);
  PeriodicSliceCheck out;
  out.uncovered = cov.first_uncovered(target);
  out.covers = !out.uncovered;
  for (std::size_t i = 0; i < slice.size() && !out.essential_c; ++i)
    for (auto idx : cov.hits[i])
      if (cov.count[idx] == 1) {
        out.essential_c = slice[i];
        out.essential_n = target.lo + idx;
        break;
      }
  return out;
}

// ---- absorber property of kN ----

/// One application of the rewitnessing rule: n = g + k n' rewritten as g1 + k (n' + t + l) with g1 != g.
struct AbsorberReplay {
  BigInt g, n, nprime, nG;
  BigInt t, l, g1;
  bool valid = false;
};

struct AbsorberReport {
  Verdict verdict;
  std::vector<AbsorberReplay> replays;
  int accepted = 0;
  int rejected = 0;
};

inline constexpr std::uint64_t kMaxAbsorberSteps = std::uint64_t{1} << 16;

/// Some n_G with (-inf, n_G] ⊆ G + kN, if G satisfies the hypothesis.
inline std::optional<BigInt> absorber_threshold(const IntSetExpr& G, std::int64_t k) {
  return lower_cofinite(sumset(G, IntSetExpr(UpRay{0, k})));
}

inline AbsorberReplay absorber_rewitness(const IntSetExpr& G, std::int64_t k, const BigInt& nG, const BigInt& g,
                                         const BigInt& nprime) {
  AbsorberReplay r;
  r.g = g;
  r.nprime = nprime;
  r.nG = nG;
  r.n = g + k * nprime;
  // smallest t >= 1 with g - k t < n_G
  r.t = std::max(BigInt(1), BigInt(floor_div(g - nG, BigInt(k)) + 1));
  const BigInt v = g - k * r.t;
  // v ∈ G + kN: walk down to an element of G
  r.l = 0;
  for (std::uint64_t step = 0; step < kMaxAbsorberSteps; ++step, ++r.l) {
    if (member(G, v - k * r.l)) {
      r.g1 = v - k * r.l;
      r.valid = r.g1 != g && r.g1 + k * (nprime + r.t + r.l) == r.n && nprime + r.t + r.l >= 0;
      return r;
    }
  }
  return r;
}

/// Checks the rewitnessing rule on exact samples G. Samples failing the hypothesis are skipped.
inline AbsorberReport absorber_check_kN(std::int64_t k, const std::vector<IntSetExpr>& samples,
                                        const Window& g_window = Window{-20, 20}) {
  if (k < 1) throw PreconditionError("k must be positive");
  AbsorberReport rep;
  for (const auto& G : samples) {
    if (!G.is_exact()) throw UnsupportedError("absorber samples must be exact sets");
    const auto nG = absorber_threshold(G, k);
    if (!nG) {
      ++rep.rejected;
      continue;
    }
    ++rep.accepted;
    const auto gs = enumerate(G, g_window);
    for (const auto& g : gs)
      for (int np : {0, 1, 3}) rep.replays.push_back(absorber_rewitness(G, k, *nG, g, np));
  }
  Verdict& v = rep.verdict;
  if (rep.accepted == 0) {
    v.status = Status::Inapplicable;
    v.note = "no sample satisfies the hypothesis";
    return rep;
  }
  for (const auto& r : rep.replays)
    if (!r.valid) {
      v.status = Status::Violated;
      v.witness = r.g;
      v.note = "rewitnessing failed for g = " + r.g.str();
      return rep;
    }
  v.status = Status::CertifiedYes;
  v.note = "every element is removable; rule replayed on " + std::to_string(rep.replays.size()) + " cases";
  return rep;
}

struct AbsorberCounterexample {
  IntSetExpr G;
  BigInt g;
  BigInt n;
};

/// Seeded structured sets: unions of down-rays with a common step, plus a few added and deleted points.
inline std::vector<IntSetExpr> structured_down_sets(int count, std::uint64_t seed, int max_step = 3) {
  std::vector<IntSetExpr> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(1, max_step), start(-6, 6), nperturb(0, 3);
  for (int i = 0; i < count; ++i) {
    const int s = step(rng);
    std::vector<Piece> ps;
    for (int r = 0; r < s; ++r)
      if (r == 0 || rng() % 2) ps.push_back(DownRay{start(rng), s});
    std::vector<BigInt> extra;
    for (int j = nperturb(rng); j > 0; --j) extra.push_back(start(rng));
    ps.push_back(make_finite(extra));
    IntSetExpr G(std::move(ps));
    for (int j = nperturb(rng); j > 0; --j) {
      const BigInt victim = start(rng);
      if (member(G, victim)) G = point_delete(G, victim).set;
    }
    out.push_back(std::move(G));
  }
  return out;
}

/// Searches structured G (down-rays with finite perturbations) meeting the hypothesis for some g whose removal
/// loses an n from G + S. Finding none proves nothing.
inline std::optional<AbsorberCounterexample> absorber_refute(const IntSetExpr& S, int trials, std::uint64_t seed = 1,
                                                             const Window& g_window = Window{-5, 5}) {
  if (!S.is_exact()) throw UnsupportedError("absorber_refute needs an exact S");
  std::vector<IntSetExpr> candidates{IntSetExpr(Line{0, 1}), IntSetExpr(DownRay{0, 1})};
  for (auto& G : structured_down_sets(trials, seed)) candidates.push_back(std::move(G));
  for (const auto& G : candidates) {
    const auto full = canonical_form(sumset(G, S));
    if (!lower_cofinite(from_form(full))) continue;
    const auto gs = enumerate(G, g_window);
    for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
      const auto less = canonical_form(sumset(point_delete(G, *it).set, S));
      if (less == full) continue;
      const auto lost = from_form(detail::intersect(full, detail::complement_full(less)));
      std::optional<BigInt> n = member(lost, *it) ? std::optional<BigInt>(*it) : next_member(lost, *it);
      if (!n) n = prev_member(lost, *it);
      return AbsorberCounterexample{G, *it, *n};
    }
  }
  return std::nullopt;
}

}  // namespace amc
