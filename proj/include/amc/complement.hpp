#pragma once

#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "amc/setalg/ops.hpp"

namespace amc {

/// CertifiedYes/CertifiedNo are symbolic results. EvidenceOnly is bounded by a window.
/// Violated and Inapplicable are used by the criteria ladder for failed or unmet hypotheses.
enum class Status { CertifiedYes, CertifiedNo, EvidenceOnly, Violated, Inapplicable };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::CertifiedYes: return "CertifiedYes";
    case Status::CertifiedNo: return "CertifiedNo";
    case Status::EvidenceOnly: return "EvidenceOnly";
    case Status::Violated: return "Violated";
    case Status::Inapplicable: return "Inapplicable";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  for (Status st : {Status::CertifiedYes, Status::CertifiedNo, Status::EvidenceOnly, Status::Violated, Status::Inapplicable})
    if (s == to_string(st)) return st;
  throw ParseError("unknown verdict status '" + s + "'");
}

/// n = c + w with no other representation through C \ {c}.
struct EssentialityCertificate {
  BigInt n;
  BigInt c;
  BigInt w;
  Window searchBound;  // alternative c' values checked explicitly
};

struct Verdict {
  Status status = Status::EvidenceOnly;
  std::optional<EssentialityCertificate> essentiality;
  std::optional<BigInt> witness;  // e.g. an uncovered integer
  std::optional<Window> window;
  BigInt budget_used = 0;
  std::vector<Interval> uncovered;  // coverage report on the window
  std::string note;
};

namespace detail {

inline Verdict coverage_evidence(const WindowSumset& ws, const Window& probe, std::string note) {
  Verdict v;
  v.status = Status::EvidenceOnly;
  v.window = probe;
  std::vector<Interval> covered;
  for (const auto& x : ws.members) covered.push_back({x, x});
  v.uncovered = subtract_runs(probe, merge_runs(std::move(covered)));
  if (!v.uncovered.empty()) v.witness = v.uncovered.front().lo;
  v.budget_used = ws.searched.size();
  v.note = std::move(note);
  return v;
}

inline bool is_empty_set(const IntSetExpr& s) { return bounds(s).empty; }

}  // namespace detail

/// Does C + W cover Z?
inline Verdict is_complement(const IntSetExpr& c, const IntSetExpr& w, const Window& probe) {
  if (detail::is_empty_set(c) || detail::is_empty_set(w)) {
    Verdict v;
    v.status = Status::CertifiedNo;
    v.witness = probe.lo;
    v.note = "empty operand covers nothing";
    return v;
  }
  if (c.is_exact() && w.is_exact()) {
    const auto sum = detail::canonicalize(detail::sumset(c.exact_form(), w.exact_form()));
    Verdict v;
    if (sum == detail::canonicalize(detail::from_components(std::vector<ApComponent>{Line{0, 1}}))) {
      v.status = Status::CertifiedYes;
      v.note = "sumset is all of Z";
      return v;
    }
    v.status = Status::CertifiedNo;
    const IntSetExpr s = from_form(sum);
    auto n = next_nonmember(s, probe.lo - 1);
    if (!n) n = prev_nonmember(s, probe.lo);
    v.witness = n;
    v.window = probe;
    v.note = "sumset misses " + n->str();
    return v;
  }
  return detail::coverage_evidence(window_sumset(c, w, probe), probe,
                                   "oracle operand; coverage checked on the probe only");
}

/// Coverage of a finite slice of a larger, unknown complement. Never certified.
inline Verdict is_complement(std::span<const BigInt> slice, const IntSetExpr& w, const Window& probe) {
  const IntSetExpr c(make_finite({slice.begin(), slice.end()}));
  WindowSumset ws;
  if (w.is_exact()) {
    ws.members = enumerate(sumset(c, w), probe);
    ws.searched = probe;
  } else {
    ws = window_sumset(c, w, probe);
  }
  return detail::coverage_evidence(ws, probe, "finite slice; coverage checked on the probe only");
}

/// Is c0 needed in C as a complement of W: is some n represented only through c0?
/// `budget` bounds the search for oracle operands and sets the certificate's explicit search bound.
inline Verdict essential(const BigInt& c0, const IntSetExpr& c, const IntSetExpr& w, const Window& budget) {
  if (!member(c, c0)) throw PreconditionError(c0.str() + " is not an element of C");
  Verdict v;
  if (c.is_exact() && w.is_exact()) {
    const auto rest = point_delete(c, c0).set;
    const auto full = detail::canonicalize(detail::sumset(c.exact_form(), w.exact_form()));
    const auto less = detail::canonicalize(detail::sumset(rest.exact_form(), w.exact_form()));
    if (full == less) {
      v.status = Status::CertifiedNo;
      v.note = "C \\ {c0} + W equals C + W";
      return v;
    }
    const auto lost = from_form(detail::intersect(full, detail::complement_full(less)));
    // Lost integer nearest to c0.
    std::optional<BigInt> n;
    if (member(lost, c0)) n = c0;
    auto above = next_member(lost, c0);
    auto below = prev_member(lost, c0);
    if (!n) n = !below ? above : !above ? below : (*above - c0 <= c0 - *below ? above : below);
    const BigInt width = budget.size();
    v.status = Status::CertifiedYes;
    v.essentiality = EssentialityCertificate{*n, c0, *n - c0, Window{*n - width, *n + width}};
    v.note = "unique representation";
    return v;
  }
  // Oracle tier: look for n = c0 + w whose other candidate summands all miss, inside the budget.
  v.status = Status::EvidenceOnly;
  v.window = budget;
  const BigInt width = budget.size();
  const Window cwin{c0 - width, c0 + width};
  BigInt used = 0;
  const auto others_runs = runs(c, cwin, used);
  std::vector<BigInt> others;
  for (const auto& r : others_runs) {
    detail::charge(used, r.size(), "essentiality search");
    for (BigInt x = r.lo; x <= r.hi; ++x)
      if (x != c0) others.push_back(x);
  }
  for (const auto& r : runs(w, Window{budget.lo - c0, budget.hi - c0}, used)) {
    for (BigInt ww = r.lo; ww <= r.hi; ++ww) {
      const BigInt n = c0 + ww;
      bool alt = false;
      for (const auto& o : others) {
        detail::charge(used, 1, "essentiality search");
        if (member(w, n - o)) {
          alt = true;
          break;
        }
      }
      if (!alt) {
        v.essentiality = EssentialityCertificate{n, c0, ww, cwin};
        v.budget_used = used;
        v.note = "no alternative representation inside the search bound";
        return v;
      }
    }
  }
  v.budget_used = used;
  v.note = "every probed n has an alternative representation inside the search bound";
  return v;
}

/// Negation of `essential`, keeping the same certificate.
inline Verdict removable(const BigInt& c0, const IntSetExpr& c, const IntSetExpr& w, const Window& budget) {
  Verdict v = essential(c0, c, w, budget);
  if (v.status == Status::CertifiedYes)
    v.status = Status::CertifiedNo;
  else if (v.status == Status::CertifiedNo)
    v.status = Status::CertifiedYes;
  return v;
}

/// Finite C with C + W covering the target. Scans the target downward; an uncovered n gets c = n - w for the
/// largest w in W with c + min W still inside the target.
inline std::vector<BigInt> greedy_complement(const IntSetExpr& w, const Window& target) {
  const SetBounds b = bounds(w);
  if (b.empty) throw PreconditionError("W is empty; nothing can be covered");
  if (!b.inf) throw PreconditionError("W has no minimum; greedy construction needs one");
  const BigInt& wmin = *b.inf;
  const BigInt size = target.size();
  if (size > BigInt(detail::kMaxFinitePoints)) throw BudgetError("target window too large for greedy construction");
  std::vector<bool> covered(static_cast<std::size_t>(size), false);
  std::vector<BigInt> out;
  BigInt used = 0;
  for (BigInt n = target.hi; n >= target.lo; --n) {
    if (covered[static_cast<std::size_t>(n - target.lo)]) continue;
    const BigInt bound = n - target.lo + wmin;
    std::optional<BigInt> wv = member(w, bound) ? std::optional<BigInt>(bound) : prev_member(w, bound);
    if (!wv) throw BudgetError("target not coverable; first uncovered point " + n.str());
    const BigInt c = n - *wv;
    out.push_back(c);
    for (const auto& r : runs(w, Window{target.lo - c, target.hi - c}, used))
      for (BigInt x = r.lo; x <= r.hi; ++x) covered[static_cast<std::size_t>(x + c - target.lo)] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RemovabilityRecord {
  BigInt c0;
  Status verdict;
  std::optional<BigInt> witness;
  Window window;
};

inline std::string format_record(const RemovabilityRecord& r) {
  std::ostringstream os;
  os << "c0 " << r.c0 << " verdict " << to_string(r.verdict) << " witness " << (r.witness ? r.witness->str() : "-")
     << " window " << r.window.lo << ' ' << r.window.hi;
  return os.str();
}

inline RemovabilityRecord parse_record(const std::string& line) {
  std::istringstream is(line);
  std::string k1, c0, k2, st, k3, wit, k4, lo, hi, extra;
  if (!(is >> k1 >> c0 >> k2 >> st >> k3 >> wit >> k4 >> lo >> hi) || (is >> extra) || k1 != "c0" || k2 != "verdict" ||
      k3 != "witness" || k4 != "window")
    throw ParseError("malformed removability record: " + line);
  RemovabilityRecord r{parse_bigint(c0), parse_status(st), std::nullopt, make_window(parse_bigint(lo), parse_bigint(hi))};
  if (wit != "-") r.witness = parse_bigint(wit);
  return r;
}

struct PruneResult {
  std::vector<BigInt> kept;
  std::vector<RemovabilityRecord> log;  // one record per input element, ascending
};

/// How often each target point is hit by c + W, and which points each c hits.
struct WindowCoverage {
  std::vector<int> count;
  std::vector<std::vector<std::size_t>> hits;
  std::optional<BigInt> first_uncovered(const Window& target) const {
    for (std::size_t j = 0; j < count.size(); ++j)
      if (count[j] == 0) return BigInt(target.lo + j);
    return std::nullopt;
  }
};

/// c must be sorted and duplicate-free.
inline WindowCoverage window_coverage(const std::vector<BigInt>& c, const IntSetExpr& w, const Window& target) {
  const BigInt size = target.size();
  if (size > BigInt(detail::kMaxFinitePoints)) throw BudgetError("target window too large for coverage counting");
  WindowCoverage cov;
  cov.count.assign(static_cast<std::size_t>(size), 0);
  cov.hits.resize(c.size());
  BigInt used = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& r : runs(w, Window{target.lo - c[i], target.hi - c[i]}, used)) {
      detail::charge(used, r.size(), "coverage counting");
      for (BigInt x = r.lo; x <= r.hi; ++x) {
        const auto idx = static_cast<std::size_t>(x + c[i] - target.lo);
        cov.hits[i].push_back(idx);
        ++cov.count[idx];
      }
    }
  }
  return cov;
}

/// Drops elements of c whose removal keeps the target covered, ascending, re-scanning to a fixpoint.
/// Log verdicts are relative to the target window: CertifiedYes = removed, CertifiedNo = kept with an n only it covers.
inline PruneResult prune_to_window_minimal(std::vector<BigInt> c, const IntSetExpr& w, const Window& target) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  auto [count, hits] = window_coverage(c, w, target);
  for (std::size_t j = 0; j < count.size(); ++j)
    if (count[j] == 0)
      throw PreconditionError("C + W does not cover the target; first uncovered point " + BigInt(target.lo + j).str());
  std::vector<bool> alive(c.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!alive[i]) continue;
      bool needed = false;
      for (auto idx : hits[i])
        if (count[idx] == 1) {
          needed = true;
          break;
        }
      if (needed) continue;
      alive[i] = false;
      for (auto idx : hits[i]) --count[idx];
      changed = true;
    }
  }
  PruneResult out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    RemovabilityRecord rec{c[i], alive[i] ? Status::CertifiedNo : Status::CertifiedYes, std::nullopt, target};
    if (alive[i]) {
      out.kept.push_back(c[i]);
      for (auto idx : hits[i])
        if (count[idx] == 1) {
          rec.witness = target.lo + idx;
          break;
        }
    }
    out.log.push_back(std::move(rec));
  }
  return out;
}

}  // namespace amc
