#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amc/periodic.hpp"

namespace amc {

struct GapProfile {
  std::vector<BigInt> positions;
  std::vector<BigInt> gaps;  // gaps[i] = positions[i+1] - positions[i]
  Window window;
};

inline GapProfile gap_profile(const IntSetExpr& s, const Window& w) {
  GapProfile g;
  g.window = w;
  g.positions = enumerate(s, w);
  for (std::size_t i = 1; i < g.positions.size(); ++i) g.gaps.push_back(g.positions[i] - g.positions[i - 1]);
  return g;
}

namespace detail {

/// |f ∩ w| by arithmetic on each residue class.
inline BigInt form_count(const ResidueForm& f, const Window& w) {
  const BigInt M(f.modulus);
  auto first_at_least = [&](const BigInt& a, std::size_t r) { return a + floor_mod(BigInt(r) - a, f.modulus); };
  auto count_between = [&](const BigInt& a, const BigInt& b, std::size_t r) -> BigInt {
    if (a > b) return 0;
    const BigInt x = first_at_least(a, r);
    return x > b ? BigInt(0) : BigInt((b - x) / M + 1);
  };
  BigInt n = 0;
  for (std::size_t r = 0; r < f.up.size(); ++r) {
    if (f.is_line(r)) {
      n += count_between(w.lo, w.hi, r);
      continue;
    }
    if (f.up[r]) n += count_between(std::max(w.lo, *f.up[r]), w.hi, r);
    if (f.down[r]) n += count_between(w.lo, std::min(w.hi, *f.down[r]), r);
  }
  for (auto it = f.points.lower_bound(w.lo); it != f.points.end() && *it <= w.hi; ++it) ++n;
  return n;
}

/// Beyond this point an exact set repeats with its modulus.
inline BigInt periodic_from(const ResidueForm& f) {
  BigInt e = 0;
  for (const auto& u : f.up)
    if (u) e = std::max(e, *u);
  for (const auto& d : f.down)
    if (d) e = std::max(e, *d);
  if (!f.points.empty()) e = std::max(e, *f.points.rbegin());
  return e + 1;
}

inline bool has_up_tail(const ResidueForm& f) {
  for (const auto& u : f.up)
    if (u) return true;
  return false;
}

/// Largest and smallest gap between consecutive members inside [lo, hi].
struct GapExtremes {
  std::optional<BigInt> sup, inf;
};

inline GapExtremes gap_extremes(const IntSetExpr& s, const Window& w) {
  BigInt used = 0;
  const auto rs = runs(s, w, used);
  GapExtremes g;
  auto take = [&](const BigInt& v) {
    if (!g.sup || v > *g.sup) g.sup = v;
    if (!g.inf || v < *g.inf) g.inf = v;
  };
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].size() >= 2) take(1);
    if (i + 1 < rs.size()) take(rs[i + 1].lo - rs[i].hi);
  }
  return g;
}

/// Window clipped so that an exact set's periodic part is seen about twice, which already shows every gap.
inline Window clip_for_exact(const IntSetExpr& s, const Window& w) {
  if (!s.is_exact() || w.hi <= w.lo) return w;
  const auto f = canonical_form(s);
  const BigInt cap = std::max(w.lo, periodic_from(f)) + 3 * BigInt(f.modulus);
  return Window{w.lo, std::min(w.hi, cap)};
}

}  // namespace detail

/// |s ∩ w|; arithmetic for exact sets, run-based otherwise.
inline BigInt count_in(const IntSetExpr& s, const Window& w) {
  if (s.is_exact()) return detail::form_count(canonical_form(s), w);
  BigInt used = 0, n = 0;
  for (const auto& r : runs(s, w, used)) n += r.size();
  return n;
}

/// Closed-form eventual behaviour of a power family, read off its block forms.
struct FamilyAsymptotics {
  std::optional<BigInt> eventualMaxGapW;  // nullopt: diverges
  std::optional<BigInt> eventualMinGapW;  // nullopt: diverges
  bool interBlockGapDivergence = false;
  bool complementInfinite = true;
  bool complementGapLimsupDivergence = false;
  bool complementGapLimDivergence = false;
  std::optional<BigInt> eventualBlockCountOfComplementWindow;
  std::uint64_t stableIndex = 0;  // formulas hold exactly from this block on
};

inline FamilyAsymptotics power_family_asymptotics(const PowerIntervalFamily& f_in) {
  validate(f_in);
  const PowerIntervalFamily f = f_in.upward() ? f_in : reflect(f_in);
  const LinForm G = f.gap_form();
  const LinForm S = f.size_form();
  FamilyAsymptotics a;
  a.stableIndex = stable_block_index(f);
  a.interBlockGapDivergence = G.diverges();
  if (!G.diverges()) a.eventualMaxGapW = G.constant;
  const bool multi = S.coeff > 0 || S.constant >= 1;
  if (multi) a.eventualMinGapW = BigInt(1);
  else if (!G.diverges()) a.eventualMinGapW = G.constant;
  a.complementInfinite = !(G.is_constant() && G.constant == 1);
  a.complementGapLimsupDivergence = a.complementInfinite && S.diverges();
  a.complementGapLimDivergence = a.complementGapLimsupDivergence && G.is_constant() && G.constant == 2;
  if (G.is_constant() && G.constant >= 2) a.eventualBlockCountOfComplementWindow = G.constant - 2;
  return a;
}

struct GapEvidence {
  std::vector<BigInt> bounds;
  std::vector<std::optional<BigInt>> values;
  std::optional<BigInt> eventual;
  Verdict verdict;
};

/// Sup of gaps of W on [1, B] per bound. CertifiedYes: the gaps are unbounded. CertifiedNo: they are bounded.
inline GapEvidence bgap_a_evidence(const IntSetExpr& w, const std::vector<BigInt>& bnds) {
  GapEvidence e;
  e.bounds = bnds;
  for (const auto& B : bnds) e.values.push_back(detail::gap_extremes(w, detail::clip_for_exact(w, Window{1, B})).sup);
  Verdict& v = e.verdict;
  if (w.is_exact()) {
    const auto f = canonical_form(w);
    if (!detail::has_up_tail(f)) {
      v.status = Status::Inapplicable;
      v.note = "finitely many positive members";
      return e;
    }
    const BigInt from = std::max(BigInt(1), detail::periodic_from(f));
    e.eventual = detail::gap_extremes(w, Window{from, from + 2 * BigInt(f.modulus) + 1}).sup;
    v.status = Status::CertifiedNo;
    v.note = "eventually periodic: gap sup " + e.eventual->str();
  } else if (auto fam = as_upward_family(w)) {
    const auto a = power_family_asymptotics(*fam);
    if (a.interBlockGapDivergence) {
      v.status = Status::CertifiedYes;
      v.note = "inter-block gap has positive leading coefficient";
    } else {
      e.eventual = a.eventualMaxGapW;
      v.status = Status::CertifiedNo;
      v.note = "inter-block gap is eventually " + e.eventual->str();
    }
  } else {
    v.status = Status::EvidenceOnly;
    v.window = Window{1, bnds.empty() ? BigInt(1) : bnds.back()};
    v.note = "no closed form; sups over the listed bounds only";
  }
  return e;
}

/// Min gap of W̄ among members in [B, last bound], per bound. CertifiedYes: gaps tend to infinity.
inline GapEvidence bgap_b_evidence(const IntSetExpr& wbar, const std::vector<BigInt>& bnds) {
  GapEvidence e;
  e.bounds = bnds;
  const BigInt top = bnds.empty() ? BigInt(1) : bnds.back();
  for (const auto& B : bnds) e.values.push_back(detail::gap_extremes(wbar, detail::clip_for_exact(wbar, Window{B, top})).inf);
  Verdict& v = e.verdict;
  if (wbar.is_exact()) {
    const auto f = canonical_form(wbar);
    if (!detail::has_up_tail(f)) {
      v.status = Status::Inapplicable;
      v.note = "finitely many positive members";
      return e;
    }
    const BigInt from = std::max(BigInt(1), detail::periodic_from(f));
    e.eventual = detail::gap_extremes(wbar, Window{from, from + 2 * BigInt(f.modulus) + 1}).inf;
    v.status = Status::CertifiedNo;
    v.note = "eventually periodic: late gaps keep returning to " + e.eventual->str();
  } else if (auto fam = as_upward_family(wbar)) {
    const auto a = power_family_asymptotics(*fam);
    if (!a.eventualMinGapW) {
      v.status = Status::CertifiedYes;
      v.note = "single-point blocks with diverging spacing";
    } else {
      e.eventual = a.eventualMinGapW;
      v.status = Status::CertifiedNo;
      v.note = "late gaps keep returning to " + e.eventual->str();
    }
  } else {
    v.status = Status::EvidenceOnly;
    v.window = Window{bnds.empty() ? BigInt(1) : bnds.front(), top};
    v.note = "no closed form; tail minima over the listed bounds only";
  }
  return e;
}

/// coeff * base^t + offset for t = t0, t0+1, ...
struct PowerRule {
  BigInt coeff{1};
  BigInt base{2};
  BigInt offset{0};
  std::uint64_t t0 = 1;
  BigInt at(std::uint64_t t) const { return coeff * ipow(base, t) + offset; }
  bool operator==(const PowerRule&) const = default;
};

struct WitnessSequence {
  std::variant<std::vector<BigInt>, PowerRule> kind;
  std::optional<BigInt> boundK;
};

struct Theorem1Row {
  BigInt value;
  std::optional<BigInt> gap;    // next W̄ member minus value
  std::optional<BigInt> count;  // |W̄ ∩ (value, next value)|
};

struct Theorem1Report {
  Verdict verdict;
  std::vector<Theorem1Row> rows;
  std::string failed;                // membership | order | gap | count
  std::optional<std::size_t> index;  // 1-based
  bool closedForm = false;
};

namespace detail {

/// d with rule(t) = low(t + d) - 1 for every t, if the rule walks the family's hole ends.
inline std::optional<std::int64_t> rule_offset_in_family(const PowerRule& r, const PowerIntervalFamily& f) {
  if (r.base != f.p || r.offset != f.lowOffset - 1 || r.coeff <= 0) return std::nullopt;
  for (std::int64_t d = 0; d < 64; ++d) {
    const BigInt pd = ipow(f.p, static_cast<std::uint64_t>(d));
    if (r.coeff == f.lowCoeff * pd) return d;
    if (f.lowCoeff == r.coeff * pd) return -d;
  }
  return std::nullopt;
}

}  // namespace detail

inline constexpr std::size_t kMaxWitnessRows = 4096;

/// Checks the witness hypotheses for t = 1..T. Certified only through a family's closed form.
inline Theorem1Report theorem1_check(const IntSetExpr& w, const WitnessSequence& ws, std::size_t T) {
  Theorem1Report rep;
  std::vector<BigInt> vals;
  if (const auto* list = std::get_if<std::vector<BigInt>>(&ws.kind)) {
    vals = *list;
  } else {
    if (T > kMaxWitnessRows) throw BudgetError("witness count T too large");
    const auto& rule = std::get<PowerRule>(ws.kind);
    for (std::size_t i = 0; i < T; ++i) vals.push_back(rule.at(rule.t0 + i));
  }
  Verdict& v = rep.verdict;
  auto violate = [&](std::size_t i, const char* what, std::string note) {
    v.status = Status::Violated;
    rep.failed = what;
    rep.index = i + 1;
    v.witness = BigInt(i + 1);
    v.note = std::move(note);
    return rep;
  };
  for (std::size_t i = 0; i < vals.size(); ++i) {
    Theorem1Row row{vals[i], std::nullopt, std::nullopt};
    if (vals[i] < 1 || member(w, vals[i])) {
      rep.rows.push_back(row);
      return violate(i, "membership", vals[i].str() + " is not in the positive complement");
    }
    if (i > 0 && !(vals[i - 1] < vals[i])) {
      rep.rows.push_back(row);
      return violate(i, "order", "witness values must increase");
    }
    if (auto nx = next_nonmember(w, vals[i])) row.gap = *nx - vals[i];
    if (i > 0) {
      const BigInt inner = count_in(w, Window{vals[i - 1] + 1, vals[i] - 1});
      rep.rows.back().count = vals[i] - vals[i - 1] - 1 - inner;
    }
    rep.rows.push_back(row);
  }
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (!rep.rows[i].gap) return violate(i, "gap", "positive complement ends after " + rep.rows[i].value.str());
    if (ws.boundK && rep.rows[i].count && *rep.rows[i].count > *ws.boundK)
      return violate(i, "count",
                     "count " + rep.rows[i].count->str() + " exceeds K = " + ws.boundK->str() + " at t = " +
                         std::to_string(i + 1));
  }

  // Closed form, when the rule walks the hole ends of an upward family.
  std::optional<PowerIntervalFamily> fam = as_upward_family(w);
  const auto* rule = std::get_if<PowerRule>(&ws.kind);
  std::optional<std::int64_t> d;
  if (fam && rule) d = detail::rule_offset_in_family(*rule, *fam);
  if (d) {
    const auto a = power_family_asymptotics(*fam);
    const LinForm S = fam->size_form();
    const LinForm G = fam->gap_form();
    if (!S.diverges()) return violate(rep.rows.size() - 1, "gap", "block length is eventually constant");
    if (G.diverges()) return violate(rep.rows.size() - 1, "count", "hole sizes grow with the block index");
    if (G.constant < 2) return violate(rep.rows.size() - 1, "membership", "blocks tile; no complement left");
    if (ws.boundK && *a.eventualBlockCountOfComplementWindow > *ws.boundK)
      return violate(rep.rows.size() - 1, "count", "eventual count " + a.eventualBlockCountOfComplementWindow->str() +
                                                        " exceeds K");
    // Rows must reach the first index where the closed form is exact.
    const std::int64_t need = static_cast<std::int64_t>(a.stableIndex) + 1 - *d;
    const std::int64_t reached = static_cast<std::int64_t>(rule->t0 + rep.rows.size()) - 1;
    if (reached >= need) {
      rep.closedForm = true;
      v.status = Status::CertifiedYes;
      v.note = "closed form: gaps grow like the block length, counts settle at " +
               a.eventualBlockCountOfComplementWindow->str();
      return rep;
    }
  }

  // Evidence: late gaps must beat every early one; without K, late counts must not beat early ones.
  const std::size_t n = rep.rows.size();
  if (n >= 2) {
    const std::size_t half = n / 2;
    BigInt early = 0;
    for (std::size_t i = 0; i < half; ++i) early = std::max(early, *rep.rows[i].gap);
    for (std::size_t i = half; i < n; ++i)
      if (*rep.rows[i].gap <= early) return violate(i, "gap", "late gap does not exceed the early maximum");
    if (!ws.boundK) {
      BigInt early_c = 0;
      for (std::size_t i = 1; i < half; ++i) early_c = std::max(early_c, *rep.rows[i].count);
      for (std::size_t i = std::max<std::size_t>(half, 1); i < n; ++i)
        if (half > 1 && *rep.rows[i].count > early_c) return violate(i, "count", "counts still growing");
    }
  }
  v.status = Status::EvidenceOnly;
  v.note = "hypotheses hold on " + std::to_string(n) + " witnesses";
  return rep;
}

/// Witness rule for an upward family: the last complement element before each block from the stable index on.
inline std::optional<WitnessSequence> auto_witness(const PowerIntervalFamily& f) {
  const auto a = power_family_asymptotics(f);
  if (!a.complementInfinite || !a.eventualBlockCountOfComplementWindow) return std::nullopt;
  WitnessSequence ws;
  ws.kind = PowerRule{f.lowCoeff, f.p, f.lowOffset - 1, a.stableIndex + 1};
  ws.boundK = a.eventualBlockCountOfComplementWindow;
  return ws;
}

// ---- decision ladder ----

struct RouteReport {
  RouteReport() = default;
  explicit RouteReport(std::string r, Status h = Status::Inapplicable, Status e = Status::Inapplicable, std::string d = {})
      : route(std::move(r)), hypothesis(h), existence(e), detail(std::move(d)) {}

  std::string route;
  Status hypothesis = Status::Inapplicable;  // does the route's hypothesis hold
  Status existence = Status::Inapplicable;   // CertifiedYes: a minimal complement exists; CertifiedNo: none
  std::string detail;
  std::optional<WitnessSequence> witness;
  std::optional<EventuallyPeriodicProfile> profile;
  std::optional<std::vector<std::int64_t>> modularC;
};

struct ClassifyOptions {
  std::size_t T = 40;
  int m_limit = kDefaultModularLimit;
  std::vector<BigInt> evidence_bounds{100, 1000, 10000, 100000};
  std::optional<BigInt> boundK;  // replaces the derived witness bound
};

struct ClassifyReport {
  std::vector<RouteReport> routes;
  Status existence = Status::EvidenceOnly;
  std::string conclusion;
  bool reflected = false;
  BigInt shift = 0;
  std::optional<IntSetExpr> normalized;
};

namespace detail {

inline void conclude(ClassifyReport& rep) {
  const RouteReport* yes = nullptr;
  const RouteReport* no = nullptr;
  for (const auto& r : rep.routes) {
    if (r.existence == Status::CertifiedYes && !yes) yes = &r;
    if (r.existence == Status::CertifiedNo && !no) no = &r;
  }
  if (yes && no) {
    rep.existence = Status::Violated;
    rep.conclusion = "routes disagree: " + yes->route + " vs " + no->route;
  } else if (yes) {
    rep.existence = Status::CertifiedYes;
    rep.conclusion = "minimal complement exists [" + yes->route + "]";
  } else if (no) {
    rep.existence = Status::CertifiedNo;
    rep.conclusion = "no minimal complement [" + no->route + ", certified]";
  } else {
    rep.existence = Status::EvidenceOnly;
    rep.conclusion = "undetermined";
  }
}

/// An oracle set bounded below that contains every integer from some point on, rewritten exactly.
inline std::optional<IntSetExpr> exact_if_cofinite(const IntSetExpr& s, const BigInt& inf) {
  const auto T = upper_cofinite(s);
  if (!T) return std::nullopt;
  if (BigInt(*T - inf) > BigInt(kMaxFinitePoints)) return std::nullopt;
  std::vector<Piece> ps{Finite{enumerate(s, Window{inf, *T})}, UpRay{*T, 1}};
  return normalize(IntSetExpr(std::move(ps)));
}

inline void periodic_routes(ClassifyReport& rep, const IntSetExpr& n, const ClassifyOptions& opt) {
  const auto p = decompose(n);
  const auto prog = as_progression_profile(p);
  RouteReport t2{"Theorem 2"};
  if (prog) {
    const auto v = theorem2_verdict(*prog);
    t2.hypothesis = v.status == Status::CertifiedNo ? Status::CertifiedYes : Status::Inapplicable;
    t2.existence = v.status == Status::CertifiedNo ? Status::CertifiedNo : Status::Inapplicable;
    t2.detail = v.note;
    t2.profile = *prog;
  } else {
    t2.detail = "Y1 is finite and nonempty";
  }
  rep.routes.push_back(std::move(t2));

  RouteReport mod{"Theorems D/E"};
  mod.profile = p;
  try {
    const auto s = search_modular_C(p, opt.m_limit);
    switch (s.outcome) {
      case ModularOutcome::EWitness:
        mod.route = "Theorem E";
        mod.hypothesis = Status::CertifiedYes;
        mod.existence = Status::CertifiedYes;
        mod.modularC = s.witness;
        mod.detail = "condition E holds";
        break;
      case ModularOutcome::DInfeasible:
        mod.route = "Theorem D";
        mod.hypothesis = Status::CertifiedNo;
        mod.existence = Status::CertifiedNo;
        mod.detail = "no subset satisfies condition D (" + std::to_string(s.examined) + " examined)";
        break;
      case ModularOutcome::Undetermined:
        mod.hypothesis = Status::EvidenceOnly;
        mod.existence = Status::EvidenceOnly;
        mod.detail = "some subset satisfies D but none satisfies E";
        break;
    }
  } catch (const BudgetError& e) {
    mod.hypothesis = Status::EvidenceOnly;
    mod.existence = Status::EvidenceOnly;
    mod.detail = std::string("budget: ") + e.what();
  }
  rep.routes.push_back(std::move(mod));
}

inline RouteReport route_ba(const IntSetExpr& n, const ClassifyOptions& opt) {
  RouteReport r{"Theorem B(a)"};
  const auto e = bgap_a_evidence(n, opt.evidence_bounds);
  r.hypothesis = e.verdict.status;
  r.existence = e.verdict.status == Status::CertifiedYes ? Status::CertifiedYes
                : e.verdict.status == Status::EvidenceOnly ? Status::EvidenceOnly
                                                           : Status::Inapplicable;
  r.detail = e.verdict.note;
  return r;
}

inline RouteReport route_bb(const IntSetExpr& n, const ClassifyOptions& opt) {
  RouteReport r{"Theorem B(b)"};
  const IntSetExpr wbar = complement_positive(n);
  const auto e = bgap_b_evidence(wbar, opt.evidence_bounds);
  r.hypothesis = e.verdict.status;
  r.existence = e.verdict.status == Status::CertifiedYes ? Status::CertifiedNo
                : e.verdict.status == Status::EvidenceOnly ? Status::EvidenceOnly
                                                           : Status::Inapplicable;
  r.detail = e.verdict.note;
  return r;
}

}  // namespace detail

/// The decision ladder. Statuses in `existence` refer to the existence of a minimal complement.
inline ClassifyReport classify(const IntSetExpr& w, const ClassifyOptions& opt = {}) {
  ClassifyReport rep;
  const SetBounds b = bounds(w);
  if (b.empty) {
    rep.routes.emplace_back("empty", Status::Inapplicable, Status::Inapplicable, "the empty set has no complement");
    rep.existence = Status::Inapplicable;
    rep.conclusion = "empty set: no complement at all";
    return rep;
  }
  if (!b.inf && !b.sup) {
    rep.routes.emplace_back("Theorem A", Status::CertifiedYes, Status::CertifiedYes, "unbounded in both directions");
    detail::conclude(rep);
    return rep;
  }
  IntSetExpr s = w;
  BigInt inf;
  if (!b.inf) {
    s = reflect(w);
    rep.reflected = true;
    inf = -*b.sup;
  } else {
    inf = *b.inf;
  }
  rep.shift = 1 - inf;
  IntSetExpr n = shift(s, rep.shift);
  if (!n.is_exact()) {
    if (auto ex = detail::exact_if_cofinite(n, 1)) n = *ex;
  }
  rep.normalized = n;
  if (bounds(n).sup) {
    rep.routes.emplace_back("finite", Status::Inapplicable, Status::Inapplicable, "finite set; outside the ladder");
    detail::conclude(rep);
    return rep;
  }

  try {
    if (n.is_exact()) {
      rep.routes.push_back(detail::route_ba(n, opt));
      rep.routes.push_back(detail::route_bb(n, opt));
      detail::periodic_routes(rep, n, opt);
    } else if (auto fam = as_upward_family(n)) {
      rep.routes.push_back(detail::route_ba(n, opt));
      rep.routes.push_back(detail::route_bb(n, opt));
      RouteReport t1{"Theorem 1"};
      if (auto ws = auto_witness(*fam)) {
        if (opt.boundK) ws->boundK = opt.boundK;
        const auto r = theorem1_check(n, *ws, opt.T);
        t1.hypothesis = r.verdict.status;
        t1.existence = r.verdict.status == Status::CertifiedYes ? Status::CertifiedNo
                       : r.verdict.status == Status::EvidenceOnly ? Status::EvidenceOnly
                                                                  : Status::Inapplicable;
        t1.detail = r.verdict.note;
        t1.witness = *ws;
      } else {
        t1.detail = "no witness rule: hole sizes are not eventually constant";
      }
      rep.routes.push_back(std::move(t1));
    } else {
      rep.routes.push_back(detail::route_ba(n, opt));
      rep.routes.push_back(detail::route_bb(n, opt));
    }
  } catch (const BudgetError& e) {
    rep.routes.emplace_back("budget", Status::EvidenceOnly, Status::EvidenceOnly, e.what());
  }
  detail::conclude(rep);
  return rep;
}

}  // namespace amc
