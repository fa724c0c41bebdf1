#pragma once

// Certificates for certified verdicts, and a verifier that re-checks them from the documents alone.
// The verifier evaluates set documents with its own membership code and plain loops; it does not call the
// set algebra, the modular search or the criteria ladder.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amc/criteria.hpp"
#include "amc/io.hpp"

namespace amc::cert {

using io::Json;

// ---- emission ----

namespace detail {

inline Json rule_json(const PowerRule& r) {
  return {{"coeff", r.coeff.str()}, {"base", r.base.str()}, {"offset", r.offset.str()}, {"t0", std::to_string(r.t0)}};
}

inline Json base(const char* kind, const std::string& route, const IntSetExpr& input, const ClassifyReport& rep) {
  Json c = {{"kind", kind}, {"route", route}, {"input", io::to_json(input)}};
  c["normalization"] = {{"reflected", rep.reflected}, {"shift", rep.shift.str()}};
  c["set"] = io::to_json(rep.normalized ? *rep.normalized : input);
  return c;
}

inline bool certified(Status s) { return s == Status::CertifiedYes || s == Status::CertifiedNo; }

inline const char* existence_word(Status s) {
  return s == Status::CertifiedYes ? "exists" : s == Status::CertifiedNo ? "none" : "open";
}

}  // namespace detail

/// Certificate for one route of a classify report, when the route carries a certified status.
inline std::optional<Json> for_route(const IntSetExpr& input, const ClassifyReport& rep, const RouteReport& r) {
  if (!detail::certified(r.hypothesis) && !detail::certified(r.existence)) return std::nullopt;
  if (r.route == "Theorem A") {
    Json c = {{"kind", "theorem-A"}, {"route", r.route}, {"set", io::to_json(input)}, {"existence", "exists"}};
    return c;
  }
  if (!rep.normalized) return std::nullopt;
  const IntSetExpr& n = *rep.normalized;
  const char* ex = detail::existence_word(r.existence);

  if (r.route == "Theorem B(a)" || r.route == "Theorem B(b)") {
    const bool a = r.route == "Theorem B(a)";
    if (n.is_exact()) {
      Json c = detail::base("eventually-periodic", r.route, input, rep);
      c["profile"] = io::to_json(decompose(n));
      c["existence"] = ex;
      return c;
    }
    auto fam = a ? as_upward_family(n) : as_upward_family(complement_positive(n));
    if (!fam) return std::nullopt;
    const auto asy = power_family_asymptotics(*fam);
    Json c = detail::base("gap-closed-form", r.route, input, rep);
    c["of"] = a ? "W" : "complement";
    c["family"] = io::to_json(IntSetExpr(*fam));
    c["stableIndex"] = std::to_string(asy.stableIndex);
    if (a) c["claim"] = asy.interBlockGapDivergence ? "gaps-diverge" : "gaps-bounded";
    else c["claim"] = asy.eventualMinGapW ? "gaps-recur" : "points-diverge";
    c["existence"] = ex;
    return c;
  }
  if (r.route == "Theorem 1") {
    auto fam = as_upward_family(n);
    if (!fam || !r.witness) return std::nullopt;
    const auto* rule = std::get_if<PowerRule>(&r.witness->kind);
    if (!rule || !r.witness->boundK) return std::nullopt;
    Json c = detail::base("theorem1", r.route, input, rep);
    c["family"] = io::to_json(IntSetExpr(*fam));
    c["rule"] = detail::rule_json(*rule);
    c["K"] = r.witness->boundK->str();
    c["existence"] = ex;
    return c;
  }
  if (r.route == "Theorem 2" && r.profile) {
    Json c = detail::base("theorem2", r.route, input, rep);
    c["profile"] = io::to_json(*r.profile);
    c["existence"] = ex;
    return c;
  }
  if (r.route == "Theorem E" && r.profile && r.modularC) {
    Json c = detail::base("modular-E", r.route, input, rep);
    c["profile"] = io::to_json(*r.profile);
    c["C"] = io::detail::strings(*r.modularC);
    c["existence"] = ex;
    return c;
  }
  if (r.route == "Theorem D" && r.profile) {
    Json c = detail::base("modular-D-infeasible", r.route, input, rep);
    c["profile"] = io::to_json(*r.profile);
    c["existence"] = ex;
    return c;
  }
  return std::nullopt;
}

/// Unique representation n = c + w, with alternatives ruled out on the search bound.
inline Json essentiality(const IntSetExpr& C, const IntSetExpr& W, const EssentialityCertificate& e) {
  return {{"kind", "essentiality"},
          {"C", io::to_json(C)},
          {"W", io::to_json(W)},
          {"n", e.n.str()},
          {"c", e.c.str()},
          {"w", e.w.str()},
          {"searchBound", {e.searchBound.lo.str(), e.searchBound.hi.str()}}};
}

/// Every n = c0 + w has another representation. C finite, W exact.
inline Json removability(const std::vector<BigInt>& C, const IntSetExpr& W, const BigInt& c0) {
  return {{"kind", "removability"}, {"C", io::detail::strings(C)}, {"W", io::to_json(W)}, {"c", c0.str()}};
}

// ---- verification ----

struct Check {
  bool ok = true;
  std::string reason;
  std::vector<std::string> checked;
};

namespace verify_detail {

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& why) { throw Fail(why); }

inline BigInt num(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) fail(std::string("missing integer field '") + key + "'");
  try {
    return parse_bigint(j[key].get<std::string>());
  } catch (const ParseError& e) {
    fail(e.what());
  }
}

inline std::vector<BigInt> nums(const Json& j) {
  if (!j.is_array()) fail("expected an array of integers");
  std::vector<BigInt> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail("integers must be decimal strings");
    out.push_back(parse_bigint(x.get<std::string>()));
  }
  return out;
}

inline const Json& sub(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j[key];
}

inline std::string kind_of(const Json& node) {
  const Json& k = sub(node, "kind");
  if (!k.is_string()) fail("node kind must be a string");
  return k.get<std::string>();
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  return r < 0 ? BigInt(r + m) : r;
}

// Plain family parameters read from a powerfamily node.
struct Fam {
  BigInt p, lc, lo, hc, hi;  // hi inclusive
  std::uint64_t k0 = 0;
  std::vector<BigInt> extra;

  BigInt low(std::uint64_t k) const {
    BigInt pk = 1;
    for (std::uint64_t i = 0; i < k; ++i) pk *= p;
    return lc * pk + lo;
  }
  BigInt high(std::uint64_t k) const {
    BigInt pk = 1;
    for (std::uint64_t i = 0; i < k; ++i) pk *= p;
    return hc * pk + hi;
  }
};

inline Fam fam_of(const Json& node) {
  if (kind_of(node) != "powerfamily") fail("expected a powerfamily node");
  Fam f;
  f.p = num(node, "p");
  f.lc = num(node, "lowCoeff");
  f.lo = num(node, "lowOffset");
  f.hc = num(node, "highCoeff");
  f.hi = num(node, "highOffset");
  const Json& closed = sub(node, "highClosed");
  if (!closed.is_boolean()) fail("highClosed must be boolean");
  if (!closed.get<bool>()) f.hi -= 1;
  const BigInt k0 = num(node, "k0");
  if (k0 < 0 || k0 > 100000) fail("k0 out of range");
  f.k0 = static_cast<std::uint64_t>(k0);
  if (node.contains("extra")) f.extra = nums(node["extra"]);
  if (f.p < 2) fail("family base must be at least 2");
  if (f.lc == 0 || f.hc == 0 || (f.lc > 0) != (f.hc > 0)) fail("family coefficients must be nonzero with one sign");
  return f;
}

inline bool fam_member(const Fam& f, const BigInt& n) {
  for (const auto& e : f.extra)
    if (e == n) return true;
  BigInt pk = 1;
  for (std::uint64_t i = 0; i < f.k0; ++i) pk *= f.p;
  for (std::uint64_t k = f.k0; k < f.k0 + 100000; ++k, pk *= f.p) {
    const BigInt a = f.lc * pk + f.lo, b = f.hc * pk + f.hi;
    if (a <= n && n <= b) return true;
    if (f.lc > 0 && a > n) return false;  // low is increasing
    if (f.lc < 0 && b < n) return false;  // high is decreasing
  }
  return false;
}

/// Document tree with the integers already read.
struct Node {
  std::string kind;
  std::set<BigInt> values;
  BigInt a, b;  // start/residue and step, or sign and offset
  Fam fam;
  std::vector<Node> kids;
};

inline Node compile(const Json& j) {
  Node n;
  n.kind = kind_of(j);
  if (n.kind == "finite") {
    for (auto& v : nums(sub(j, "values"))) n.values.insert(std::move(v));
  } else if (n.kind == "upray" || n.kind == "downray" || n.kind == "line") {
    n.a = num(j, n.kind == "line" ? "residue" : "start");
    n.b = num(j, "step");
    if (n.b < 1) fail("step must be positive");
  } else if (n.kind == "powerfamily") {
    n.fam = fam_of(j);
  } else if (n.kind == "union") {
    for (const auto& c : sub(j, "of")) n.kids.push_back(compile(c));
  } else if (n.kind == "complement") {
    n.kids.push_back(compile(sub(j, "of")));
  } else if (n.kind == "affine") {
    n.a = num(j, "sign");
    n.b = num(j, "offset");
    if (n.a != 1 && n.a != -1) fail("affine sign must be 1 or -1");
    n.kids.push_back(compile(sub(j, "of")));
  } else {
    fail("unknown node kind '" + n.kind + "'");
  }
  return n;
}

inline bool member(const Node& node, const BigInt& n) {
  const std::string& k = node.kind;
  if (k == "finite") return node.values.count(n) != 0;
  if (k == "upray" || k == "downray") {
    const BigInt off = k == "upray" ? BigInt(n - node.a) : BigInt(node.a - n);
    return off >= 0 && off % node.b == 0;
  }
  if (k == "line") return mod(n - node.a, node.b) == 0;
  if (k == "powerfamily") return fam_member(node.fam, n);
  if (k == "union") {
    for (const auto& c : node.kids)
      if (member(c, n)) return true;
    return false;
  }
  if (k == "complement") return n >= 1 && !member(node.kids[0], n);
  return member(node.kids[0], node.a == 1 ? BigInt(n - node.b) : BigInt(node.b - n));
}

/// For a set built only from finite, ray and line nodes: anchor A and period L such that membership is
/// L-periodic on n > A and on n < -A.
struct Periodicity {
  BigInt A = 0;
  BigInt L = 1;
};

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt x = a, y = b;
  while (y != 0) {
    BigInt t = x % y;
    x = y;
    y = t;
  }
  return a / x * b;
}

inline Periodicity periodicity(const Json& node) {
  const std::string k = kind_of(node);
  Periodicity p;
  auto absv = [](const BigInt& v) { return v < 0 ? BigInt(-v) : v; };
  if (k == "finite") {
    for (const auto& v : nums(sub(node, "values"))) p.A = std::max(p.A, absv(v));
  } else if (k == "upray" || k == "downray") {
    p.A = absv(num(node, "start"));
    p.L = num(node, "step");
  } else if (k == "line") {
    p.L = num(node, "step");
  } else if (k == "union") {
    for (const auto& c : sub(node, "of")) {
      const auto q = periodicity(c);
      p.A = std::max(p.A, q.A);
      p.L = lcm(p.L, q.L);
    }
  } else {
    fail("node kind '" + k + "' is not eventually periodic");
  }
  if (p.L > (BigInt(1) << 24)) fail("period too large to check");
  return p;
}

inline constexpr std::int64_t kMaxScan = std::int64_t{1} << 22;

/// Every integer of [lo, hi], or a failure when the range is too long.
template <class F>
void scan(const BigInt& lo, const BigInt& hi, F&& fn) {
  if (hi - lo > kMaxScan) fail("check window [" + lo.str() + ", " + hi.str() + "] is too long");
  for (BigInt n = lo; n <= hi; ++n) fn(n);
}

// Plain profile read from a profile document.
struct Prof {
  std::int64_t m = 1;
  std::vector<std::int64_t> Xm;
  std::vector<BigInt> Y0;
  bool finite = true;
  std::vector<BigInt> Y1;
  std::vector<std::int64_t> D;
  std::int64_t k = 1;
  BigInt shift = 0;

  std::vector<std::int64_t> y1res() const {
    std::vector<std::int64_t> r;
    auto add = [&](std::int64_t v) {
      if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    };
    if (finite) {
      for (const auto& y : Y1) add(static_cast<std::int64_t>(mod(y, m)));
    } else {
      for (auto d : D) add(d);
    }
    return r;
  }
};

inline Prof prof_of(const Json& j) {
  Prof p;
  const BigInt m = num(j, "m");
  if (m < 1 || m > 4096) fail("profile period out of range");
  p.m = static_cast<std::int64_t>(m);
  auto residues = [&](const Json& a) {
    std::vector<std::int64_t> out;
    for (const auto& v : nums(a)) {
      if (v < 0 || v >= m) fail("residue " + v.str() + " outside [0, m-1]");
      out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
  };
  p.Xm = residues(sub(j, "Xm"));
  p.Y0 = nums(sub(j, "Y0"));
  const Json& y1 = sub(j, "Y1");
  if (y1.contains("finite")) {
    p.Y1 = nums(y1["finite"]);
  } else {
    p.finite = false;
    p.D = residues(sub(y1, "D"));
    const BigInt k = num(y1, "k");
    if (k < 1 || k > 4096) fail("progression factor out of range");
    p.k = static_cast<std::int64_t>(k);
  }
  p.shift = j.contains("shift") ? num(j, "shift") : BigInt(0);

  // The shape constraints, by direct loops.
  for (const auto& y : p.Y0) {
    if (y >= 0) fail("Y0 element " + y.str() + " is not negative");
    if (std::find(p.Xm.begin(), p.Xm.end(), static_cast<std::int64_t>(mod(y, m))) == p.Xm.end())
      fail("Y0 element " + y.str() + " has a residue outside Xm");
  }
  for (auto r : p.y1res())
    if (std::find(p.Xm.begin(), p.Xm.end(), r) != p.Xm.end()) fail("Y1 residue " + std::to_string(r) + " meets Xm");
  return p;
}

inline bool prof_member(const Prof& p, const BigInt& n) {
  const BigInt v = n - p.shift;
  for (auto x : p.Xm)
    if (v >= x && mod(v - x, p.m) == 0) return true;
  for (const auto& y : p.Y0)
    if (y == v) return true;
  if (p.finite) {
    for (const auto& y : p.Y1)
      if (y == v) return true;
  } else {
    for (auto d : p.D)
      if (v >= d && mod(v - d, BigInt(p.m) * p.k) == 0) return true;
  }
  return false;
}

/// The exact set document denotes exactly the profile's set.
inline void same_as_profile(const Json& set, const Prof& p) {
  const auto q = periodicity(set);
  BigInt A = q.A + (p.shift < 0 ? BigInt(-p.shift) : p.shift) + BigInt(p.m) * p.k;
  for (const auto& y : p.Y0) A = std::max(A, BigInt((y < 0 ? BigInt(-y) : y) + (p.shift < 0 ? -p.shift : p.shift)));
  for (const auto& y : p.Y1) A = std::max(A, BigInt((y < 0 ? BigInt(-y) : y) + (p.shift < 0 ? -p.shift : p.shift)));
  const BigInt L = lcm(q.L, BigInt(p.m) * p.k);
  const Node s = compile(set);
  scan(-A - L, A + L, [&](const BigInt& n) {
    if (member(s, n) != prof_member(p, n)) fail("set and profile differ at " + n.str());
  });
}

/// Normalized set agrees with the input moved by the recorded reflection and shift.
inline void same_as_normalized(const Json& c, Check& out) {
  if (!c.contains("input")) return;
  const Json& in = c["input"];
  const Json& set = sub(c, "set");
  const Json& nz = sub(c, "normalization");
  const bool refl = sub(nz, "reflected").get<bool>();
  const BigInt s = num(nz, "shift");
  auto pre = [&](const BigInt& n) { return refl ? BigInt(-(n - s)) : BigInt(n - s); };
  BigInt lo = -4096, hi = 4096;
  std::string how = "on [-4096, 4096]";
  try {
    const auto a = periodicity(in), b = periodicity(set);
    const BigInt A = std::max(BigInt(a.A + (s < 0 ? BigInt(-s) : s)), b.A);
    const BigInt L = lcm(a.L, b.L);
    lo = -A - L;
    hi = A + L;
    how = "exactly";
  } catch (const Fail&) {
  }
  const Node sn = compile(set), inn = compile(in);
  scan(lo, hi, [&](const BigInt& n) {
    if (member(sn, n) != member(inn, pre(n))) fail("normalized set disagrees with the input at " + n.str());
  });
  out.checked.push_back(std::string("normalization matches the input ") + how);
}

// Which way a document is unbounded; false means "not established".
struct Reach {
  bool below = false, above = false;
  bool bounded_below = false, bounded_above = false;
};

inline Reach reach(const Json& node) {
  const std::string k = kind_of(node);
  Reach r;
  if (k == "finite") {
    r.bounded_below = r.bounded_above = true;
  } else if (k == "upray") {
    r.above = r.bounded_below = true;
  } else if (k == "downray") {
    r.below = r.bounded_above = true;
  } else if (k == "line") {
    r.above = r.below = true;
  } else if (k == "powerfamily") {
    const Fam f = fam_of(node);
    // Blocks are nonempty infinitely often iff the size form is eventually >= 0.
    const BigInt sc = f.hc - f.lc, sk = f.hi - f.lo;
    const bool nonempty = f.lc > 0 ? (sc > 0 || (sc == 0 && sk >= 0)) : (sc > 0 || (sc == 0 && sk >= 0));
    if (!nonempty) fail("family blocks are eventually empty");
    if (f.lc > 0) r.above = r.bounded_below = true;
    else r.below = r.bounded_above = true;
  } else if (k == "union") {
    r.bounded_below = r.bounded_above = true;
    for (const auto& c : sub(node, "of")) {
      const Reach q = reach(c);
      r.below = r.below || q.below;
      r.above = r.above || q.above;
      r.bounded_below = r.bounded_below && q.bounded_below;
      r.bounded_above = r.bounded_above && q.bounded_above;
    }
  } else if (k == "complement") {
    r.bounded_below = true;
    r.above = reach(sub(node, "of")).bounded_above;
  } else if (k == "affine") {
    const Reach q = reach(sub(node, "of"));
    if (num(node, "sign") == 1) return q;
    r.below = q.above;
    r.above = q.below;
    r.bounded_below = q.bounded_above;
    r.bounded_above = q.bounded_below;
  } else {
    fail("unknown node kind '" + k + "'");
  }
  return r;
}

/// Family and set (or its positive complement) agree on a window covering the extras and several stable blocks.
inline void family_matches(const Json& c, const Fam& f, bool complement, std::uint64_t stable, Check& out) {
  const Node set = compile(sub(c, "set"));
  BigInt lo = 1;
  for (const auto& e : f.extra) lo = std::min(lo, e);
  if (!complement) lo = std::min(lo, f.low(f.k0));
  std::uint64_t top = stable + 3;
  while (top > stable + 1 && f.high(top) - lo > (BigInt(1) << 16)) --top;
  BigInt hi = f.high(top);
  for (const auto& e : f.extra) hi = std::max(hi, e);
  scan(lo - 1, hi, [&](const BigInt& n) {
    const bool s = complement ? (n >= 1 && !member(set, n)) : member(set, n);
    if (s != fam_member(f, n)) fail("family and set differ at " + n.str());
  });
  out.checked.push_back("family agrees with the " + std::string(complement ? "positive complement" : "set") + " on [" +
                        BigInt(lo - 1).str() + ", " + hi.str() + "]");
}

inline void expect_existence(const Json& c, const char* want) {
  const Json& e = sub(c, "existence");
  if (!e.is_string() || e.get<std::string>() != want)
    fail(std::string("certificate states existence '") + (e.is_string() ? e.get<std::string>() : "?") +
         "' but the checked facts give '" + want + "'");
}

// ---- per kind ----

inline void theorem_a(const Json& c, Check& out) {
  const Reach r = reach(sub(c, "set"));
  if (!r.below || !r.above) fail("set is not shown to be unbounded in both directions");
  out.checked.push_back("set has pieces unbounded below and above");
  expect_existence(c, "exists");
}

inline void gap_closed_form(const Json& c, Check& out) {
  const Fam f = fam_of(sub(c, "family"));
  if (f.lc < 0) fail("family must be upward");
  const BigInt stable_big = num(c, "stableIndex");
  if (stable_big < BigInt(f.k0) || stable_big > 10000) fail("stable index out of range");
  const auto stable = static_cast<std::uint64_t>(stable_big);
  const std::string of = sub(c, "of").get<std::string>();
  const std::string claim = sub(c, "claim").get<std::string>();
  same_as_normalized(c, out);
  family_matches(c, f, of == "complement", stable, out);

  // Gap between block k and k+1 is (lc p - hc) p^k + (lo - hi); size of block k is (hc - lc) p^k + (hi - lo).
  const BigInt gc = f.lc * f.p - f.hc, g0 = f.lo - f.hi;
  const BigInt sc = f.hc - f.lc, s0 = f.hi - f.lo;
  if (gc < 0 || (gc == 0 && g0 < 1)) fail("blocks eventually overlap");
  for (std::uint64_t k = stable; k < stable + 8; ++k) {
    if (f.low(k + 1) - f.high(k) < 1) fail("blocks " + std::to_string(k) + " and " + std::to_string(k + 1) + " touch");
    if (f.high(k) < f.low(k)) fail("block " + std::to_string(k) + " is empty past the stable index");
  }
  const char* ex = "open";
  if (claim == "gaps-diverge") {
    if (gc <= 0) fail("inter-block gap does not grow");
    if (of == "W") ex = "exists";
  } else if (claim == "gaps-bounded") {
    if (gc != 0) fail("inter-block gap is not constant");
  } else if (claim == "points-diverge") {
    if (sc != 0 || s0 != 0) fail("blocks are not single points");
    if (gc <= 0) fail("spacing does not grow");
    if (of == "complement") ex = "none";
  } else if (claim == "gaps-recur") {
    if (!(sc > 0 || (sc == 0 && s0 >= 1) || gc == 0)) fail("no recurring small gap");
  } else {
    fail("unknown claim '" + claim + "'");
  }
  out.checked.push_back("closed-form claim " + claim + " on the " + of + " family");
  expect_existence(c, ex);
}

inline void eventually_periodic(const Json& c, Check& out) {
  const Prof p = prof_of(sub(c, "profile"));
  same_as_normalized(c, out);
  same_as_profile(sub(c, "set"), p);
  if (p.Xm.empty() && (p.finite || p.D.empty())) fail("profile has no periodic tail");
  out.checked.push_back("set equals the profile's set; gaps of the set and of its positive complement are periodic");
  expect_existence(c, "open");
}

inline void theorem1(const Json& c, Check& out) {
  const Fam f = fam_of(sub(c, "family"));
  if (f.lc < 0) fail("family must be upward");
  const Json& rj = sub(c, "rule");
  const BigInt coeff = num(rj, "coeff"), base = num(rj, "base"), offset = num(rj, "offset"), t0b = num(rj, "t0");
  const BigInt K = num(c, "K");
  if (t0b < 0 || t0b > 10000) fail("rule start out of range");
  const auto t0 = static_cast<std::uint64_t>(t0b);
  same_as_normalized(c, out);

  // rule(t) = low(t + d) - 1
  if (base != f.p || offset != f.lo - 1) fail("rule does not walk the hole ends of the family");
  std::optional<std::int64_t> d;
  BigInt pd = 1;
  for (std::int64_t e = 0; e < 64 && !d; ++e, pd *= f.p) {
    if (coeff == f.lc * pd) d = e;
    else if (f.lc == coeff * pd) d = -e;
  }
  if (!d) fail("rule coefficient is not the family's low coefficient times a power of the base");
  const BigInt first = BigInt(static_cast<std::int64_t>(t0)) + *d;
  if (first < BigInt(f.k0) + 1) fail("rule starts before the family's first hole");

  // Closed form: constant hole between blocks, block length growing.
  const BigInt gc = f.lc * f.p - f.hc, g0 = f.lo - f.hi;
  if (gc != 0) fail("hole size between blocks is not constant");
  if (g0 < 2) fail("blocks leave no complement between them");
  if (f.hc - f.lc <= 0) fail("block length does not grow");
  if (g0 - 2 > K) fail("hole count " + BigInt(g0 - 2).str() + " exceeds K");
  out.checked.push_back("closed form: holes of " + BigInt(g0 - 1).str() + " with " + BigInt(g0 - 2).str() +
                        " interior complement elements, block length grows");

  const auto stable = static_cast<std::uint64_t>(first);
  for (const auto& e : f.extra)
    if (e >= f.low(stable - 1) && !fam_member(Fam{f.p, f.lc, f.lo, f.hc, f.hi, f.k0, {}}, e))
      fail("extra element " + e.str() + " sits in a hole past the first witness");

  // Explicit rows while the scans stay small.
  family_matches(c, f, false, stable, out);
  const Node set = compile(sub(c, "set"));
  auto rule = [&](std::uint64_t t) {
    BigInt pk = 1;
    for (std::uint64_t i = 0; i < t; ++i) pk *= base;
    return coeff * pk + offset;
  };
  std::optional<BigInt> prev, prev_gap;
  std::size_t rows = 0;
  for (std::uint64_t t = t0; rows < 12; ++t, ++rows) {
    const BigInt v = rule(t);
    if (v > (BigInt(1) << 21)) break;
    if (v < 1 || member(set, v)) fail("witness " + v.str() + " is not in the positive complement");
    BigInt nx = v + 1;
    while (member(set, nx)) ++nx;
    const BigInt gap = nx - v;
    if (prev_gap && !(gap > *prev_gap)) fail("gap at witness " + v.str() + " does not grow");
    if (prev) {
      BigInt count = 0;
      for (BigInt x = *prev + 1; x < v; ++x)
        if (!member(set, x)) ++count;
      if (count > K) fail("count before witness " + v.str() + " is " + count.str() + " > K");
    }
    prev = v;
    prev_gap = gap;
  }
  out.checked.push_back(std::to_string(rows) + " explicit witness rows rechecked by scanning");
  expect_existence(c, "none");
}

inline std::set<std::int64_t> sums(const std::vector<std::int64_t>& A, const std::vector<std::int64_t>& B, std::int64_t m) {
  std::set<std::int64_t> s;
  for (auto a : A)
    for (auto b : B) s.insert((a + b) % m);
  return s;
}

/// Condition (a) and the per-element condition, written out with sets of residues.
inline bool condition(const Prof& p, const std::vector<std::int64_t>& C, bool e_form) {
  const auto Y = p.y1res();
  std::vector<std::int64_t> XY = p.Xm;
  XY.insert(XY.end(), Y.begin(), Y.end());
  if (static_cast<std::int64_t>(sums(C, XY, p.m).size()) != p.m) return false;
  for (auto c : C) {
    std::vector<std::int64_t> others;
    for (auto c2 : C)
      if (!e_form || c2 != c) others.push_back(c2);
    const auto blocked = sums(others, e_form ? XY : p.Xm, p.m);
    bool free_y = false;
    for (auto y : Y)
      if (!blocked.count((c + y) % p.m)) free_y = true;
    if (!free_y) return false;
  }
  return true;
}

inline void modular_e(const Json& c, Check& out) {
  const Prof p = prof_of(sub(c, "profile"));
  if (!p.finite) fail("condition E needs a finite Y1");
  same_as_normalized(c, out);
  same_as_profile(sub(c, "set"), p);
  std::vector<std::int64_t> C;
  for (const auto& v : nums(sub(c, "C"))) {
    if (v < 0 || v >= p.m) fail("C element out of range");
    C.push_back(static_cast<std::int64_t>(v));
  }
  if (!condition(p, C, true)) fail("C does not satisfy condition E");
  out.checked.push_back("set equals the profile's set; C satisfies condition E");
  expect_existence(c, "exists");
}

inline void modular_d_infeasible(const Json& c, Check& out) {
  const Prof p = prof_of(sub(c, "profile"));
  if (!p.finite) fail("condition D search needs a finite Y1");
  if (p.m > 20) fail("period too large to enumerate");
  same_as_normalized(c, out);
  same_as_profile(sub(c, "set"), p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.m); ++mask) {
    std::vector<std::int64_t> C;
    for (std::int64_t r = 0; r < p.m; ++r)
      if (mask >> r & 1U) C.push_back(r);
    if (condition(p, C, false)) fail("subset of size " + std::to_string(C.size()) + " satisfies condition D");
  }
  out.checked.push_back("set equals the profile's set; all " + std::to_string(std::uint64_t{1} << p.m) +
                        " subsets fail condition D");
  expect_existence(c, "none");
}

inline void theorem2(const Json& c, Check& out) {
  const Prof p = prof_of(sub(c, "profile"));
  if (p.finite) fail("Y1 is not a union of progressions");
  if (p.D.empty()) fail("D is empty");
  same_as_normalized(c, out);
  same_as_profile(sub(c, "set"), p);
  out.checked.push_back("set equals the profile's set; Y1 = D + mkN with D nonempty");
  expect_existence(c, "none");
}

inline void essentiality_check(const Json& c, Check& out) {
  const Node C = compile(sub(c, "C"));
  const Node W = compile(sub(c, "W"));
  const BigInt n = num(c, "n"), c0 = num(c, "c"), w = num(c, "w");
  const auto bound = nums(sub(c, "searchBound"));
  if (bound.size() != 2 || bound[1] < bound[0]) fail("bad search bound");
  if (n != c0 + w) fail("n is not c + w");
  if (!member(C, c0)) fail("c is not in C");
  if (!member(W, w)) fail("w is not in W");
  scan(bound[0], bound[1], [&](const BigInt& x) {
    if (x != c0 && member(C, x) && member(W, n - x)) fail(n.str() + " is also " + x.str() + " + " + BigInt(n - x).str());
  });
  out.checked.push_back("no other representation of " + n.str() + " with c' in [" + bound[0].str() + ", " +
                        bound[1].str() + "]");
}

inline void removability_check(const Json& c, Check& out) {
  const auto C = nums(sub(c, "C"));
  const auto q = periodicity(sub(c, "W"));
  const Node W = compile(sub(c, "W"));
  const BigInt c0 = num(c, "c");
  if (std::find(C.begin(), C.end(), c0) == C.end()) fail("c is not in C");
  BigInt spread = 0;
  for (const auto& x : C) spread = std::max(spread, BigInt(x > c0 ? x - c0 : c0 - x));
  const BigInt A = q.A + spread;
  // Each w in W: c0 + w = c' + w' for some other c'.
  scan(-A - q.L, A + q.L, [&](const BigInt& w) {
    if (!member(W, w)) return;
    for (const auto& x : C)
      if (x != c0 && member(W, c0 + w - x)) return;
    fail(BigInt(c0 + w).str() + " is represented only through " + c0.str());
  });
  out.checked.push_back("every c + w has another representation (periodic beyond " + A.str() + ")");
}

}  // namespace verify_detail

/// Re-checks a certificate document.
inline Check verify(const Json& c) {
  Check out;
  try {
    const std::string kind = verify_detail::kind_of(c);
    if (kind == "theorem-A") verify_detail::theorem_a(c, out);
    else if (kind == "gap-closed-form") verify_detail::gap_closed_form(c, out);
    else if (kind == "eventually-periodic") verify_detail::eventually_periodic(c, out);
    else if (kind == "theorem1") verify_detail::theorem1(c, out);
    else if (kind == "modular-E") verify_detail::modular_e(c, out);
    else if (kind == "modular-D-infeasible") verify_detail::modular_d_infeasible(c, out);
    else if (kind == "theorem2") verify_detail::theorem2(c, out);
    else if (kind == "essentiality") verify_detail::essentiality_check(c, out);
    else if (kind == "removability") verify_detail::removability_check(c, out);
    else verify_detail::fail("unknown certificate kind '" + kind + "'");
  } catch (const verify_detail::Fail& e) {
    out.ok = false;
    out.reason = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.ok = false;
    out.reason = std::string("malformed certificate: ") + e.what();
  } catch (const Error& e) {
    out.ok = false;
    out.reason = e.what();
  }
  return out;
}

}  // namespace amc::cert
