// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "amc/criteria.hpp"
#include "amc/named_sets.hpp"
#include "amc/periodic.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace amc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// ---- 1: worked example ----

Outcome example_values() {
  const IntSetExpr w(doubling_blocks_family());
  const IntSetExpr wbar = complement_positive(w);
  Outcome o;
  for (std::uint64_t k = 5; k <= 40 && o.pass; ++k) {
    const BigInt pk = ipow(BigInt(2), k);
    const auto maxgap = detail::gap_extremes(w, Window{pk, 2 * pk + 16}).sup;
    const auto mingap = detail::gap_extremes(wbar, Window{pk, 2 * pk + 16}).inf;
    const BigInt count = count_in(wbar, Window{pk + 9, 2 * pk + 7});
    if (!maxgap || *maxgap != 10 || !mingap || *mingap != 1 || count != 8) {
      o = {false, "k = " + std::to_string(k) + " breaks max gap 10, min gap 1 or count 8"};
    }
  }
  // Brute force over the raw family for small k.
  const auto f = oracle::example_w();
  for (std::int64_t k = 5; k <= 14 && o.pass; ++k) {
    const std::int64_t pk = std::int64_t{1} << k;
    std::int64_t count = 0, prev = -1, maxgap = 0;
    for (std::int64_t n = pk; n <= 2 * pk + 16; ++n) {
      if (oracle::in_family(f, n)) {
        if (prev >= 0) maxgap = std::max(maxgap, n - prev);
        prev = n;
      } else if (n >= pk + 9 && n <= 2 * pk + 7) {
        ++count;
      }
    }
    if (maxgap != 10 || count != 8) o = {false, "brute force disagrees at k = " + std::to_string(k)};
  }
  WitnessSequence ws{PowerRule{1, 2, 8, 5}, BigInt(8)};
  const auto t1 = theorem1_check(w, ws, 36);
  if (o.pass && t1.verdict.status != Status::CertifiedYes) o = {false, "Theorem 1 check: " + t1.verdict.note};
  if (o.pass) o.detail = "k in [5, 40]: max gap 10, min complement gap 1, count 8; 2^t+8 with K = 8 certified";
  return o;
}

// ---- 2: remark ----

Outcome remark_values() {
  const IntSetExpr w(decade_blocks_family());
  const IntSetExpr wbar = complement_positive(w);
  auto increasing = [](const IntSetExpr& s, auto&& window_of) {
    std::optional<BigInt> prev;
    for (std::uint64_t k = 1; k <= 40; ++k) {
      const auto sup = detail::gap_extremes(s, window_of(ipow(BigInt(10), k))).sup;
      if (!sup || (prev && !(*sup > *prev))) return false;
      prev = sup;
    }
    return true;
  };
  if (!increasing(w, [](const BigInt& pk) { return Window{pk, 10 * pk + 1}; }))
    return {false, "sup gaps of W not strictly increasing"};
  if (!increasing(wbar, [](const BigInt& pk) { return Window{pk - 1, 2 * pk + 1}; }))
    return {false, "sup gaps of the complement not strictly increasing"};
  const auto a = power_family_asymptotics(decade_blocks_family());
  if (!a.interBlockGapDivergence || !a.complementGapLimsupDivergence) return {false, "closed forms do not diverge"};
  for (const BigInt& K : {BigInt(0), BigInt(8), BigInt(1000), ipow(BigInt(10), 30)}) {
    const auto r = theorem1_check(w, WitnessSequence{PowerRule{10, 10, -1, 1}, K}, 40);
    if (r.verdict.status != Status::Violated || r.failed != "count")
      return {false, "K = " + K.str() + " not violated on count"};
  }
  return {true, "k <= 40: both gap sequences strictly increase; K up to 10^30 violated on count"};
}

// ---- 3: sumset against pairwise sums ----

Outcome sumset_pairs() {
  std::mt19937_64 rng(20240601);
  const std::int64_t span = 60;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ca = oracle::random_components(rng, 4, 6);
    const auto cb = oracle::random_components(rng, 4, 6);
    const auto ea = oracle::scan(ca, -100 - span, 100 + span);
    const auto eb = oracle::scan(cb, -100 - span, 100 + span);
    std::set<std::int64_t> want;
    for (auto x : ea)
      for (auto y : eb)
        if (-100 <= x + y && x + y <= 100) want.insert(x + y);
    const IntSetExpr s = sumset(IntSetExpr::from_components(ca), IntSetExpr::from_components(cb));
    const auto got = oracle::to_ints(enumerate(s, Window{-100, 100}));
    if (got != std::vector<std::int64_t>(want.begin(), want.end()))
      return {false, "mismatch at trial " + std::to_string(trial)};
  }
  return {true, "1000 seeded pairs agree on [-100, 100]"};
}

// ---- 4: modular search over small profiles ----

// Greedy variant that puts n - inf W on every uncovered n, scanning down. Its elements spread over the whole window.
std::vector<BigInt> spread_greedy(const IntSetExpr& w, const Window& t) {
  const BigInt wmin = *bounds(w).inf;
  std::vector<bool> cov(static_cast<std::size_t>(t.size()), false);
  std::vector<BigInt> out;
  BigInt used = 0;
  for (BigInt n = t.hi; n >= t.lo; --n) {
    if (cov[static_cast<std::size_t>(n - t.lo)]) continue;
    const BigInt c = n - wmin;
    out.push_back(c);
    for (const auto& r : runs(w, Window{t.lo - c, t.hi - c}, used))
      for (BigInt x = r.lo; x <= r.hi; ++x) cov[static_cast<std::size_t>(x + c - t.lo)] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Removal {
  std::size_t interior = 0, removable = 0;
};

Removal spread_removability(const IntSetExpr& w_in, std::int64_t N) {
  const IntSetExpr w = shift(w_in, 1 - *bounds(w_in).inf);
  const Window t{-N, N};
  const auto c = spread_greedy(w, t);
  const auto cov = window_coverage(c, w, t);
  Removal r;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < -N / 2 || c[i] > N / 2) continue;
    ++r.interior;
    bool needed = false;
    for (auto idx : cov.hits[i]) needed = needed || cov.count[idx] == 1;
    if (!needed) ++r.removable;
  }
  return r;
}

Outcome modular_profiles() {
  int profiles = 0, ewit = 0, dinf = 0;
  std::size_t greedy_interior = 0, spread_interior = 0;
  for (std::int64_t m = 1; m <= 4; ++m) {
    const unsigned full = (1u << m) - 1;
    for (unsigned xm = 1; xm <= full; ++xm) {
      const unsigned rest = full & ~xm;
      for (unsigned ym = 0; ym <= rest; ++ym) {
        if ((ym & rest) != ym) continue;
        EventuallyPeriodicProfile p;
        p.m = m;
        std::vector<BigInt> y1;
        for (std::int64_t r = 0; r < m; ++r) {
          if (xm >> r & 1) p.Xm.push_back(r);
          if (ym >> r & 1) y1.push_back(r + m);
        }
        p.Y1 = y1;
        ++profiles;
        const std::string tag = "m = " + std::to_string(m) + ", Xm mask " + std::to_string(xm) + ", Y1 mask " +
                                std::to_string(ym);
        const auto s = search_modular_C(p);
        const auto q = as_progression_profile(p);
        const bool t2no = q && theorem2_verdict(*q).status == Status::CertifiedNo;
        if (s.outcome == ModularOutcome::EWitness) {
          ++ewit;
          if (t2no) return {false, tag + ": E witness next to Theorem 2"};
          if (!periodic_slice_check(p, s.witness, 200).covers) return {false, tag + ": E witness slice does not cover"};
        }
        if (s.outcome == ModularOutcome::DInfeasible) {
          ++dinf;
          const IntSetExpr w = reconstruct(p);
          const auto g = greedy_corroboration(w, 200);
          if (!g.all_interior_removable()) return {false, tag + ": greedy interior element essential"};
          const auto r = spread_removability(w, 200);
          if (r.removable != r.interior) return {false, tag + ": spread greedy interior element essential"};
          greedy_interior += g.interior;
          spread_interior += r.interior;
        }
      }
    }
  }
  std::ostringstream os;
  os << profiles << " profiles, " << ewit << " E witnesses, " << dinf << " D infeasible; interior elements checked: "
     << greedy_interior << " greedy, " << spread_interior << " spread";
  return {true, os.str()};
}

// ---- 5: Theorem 2 families ----

Outcome theorem2_families() {
  struct Fam {
    std::int64_t m, k;
    std::vector<std::int64_t> D, Xm;
  };
  const std::vector<Fam> fams = {{2, 2, {1}, {0}}, {3, 1, {1}, {0}}, {4, 3, {1, 3}, {0, 2}}};
  std::size_t greedy_interior = 0, spread_interior = 0;
  for (const auto& f : fams) {
    EventuallyPeriodicProfile p;
    p.m = f.m;
    p.Xm = f.Xm;
    p.Y1 = Progressions{f.D, f.k};
    const std::string tag = "m = " + std::to_string(f.m) + ", k = " + std::to_string(f.k);
    if (theorem2_verdict(p).status != Status::CertifiedNo) return {false, tag + ": Theorem 2 not certified"};
    const IntSetExpr w = reconstruct(p);
    for (std::int64_t N : {100, 200, 400}) {
      const auto g = greedy_corroboration(w, N);
      const auto r = spread_removability(w, N);
      if (!g.all_interior_removable() || r.removable != r.interior)
        return {false, tag + ", N = " + std::to_string(N) + ": interior element essential"};
      greedy_interior += g.interior;
      spread_interior += r.interior;
    }
  }
  return {true, "3 families, N in {100, 200, 400}: all interior elements removable (" + std::to_string(greedy_interior) +
                    " greedy, " + std::to_string(spread_interior) + " spread)"};
}

// ---- 6: absorber ----

Outcome absorber() {
  std::size_t replays = 0, equalities = 0;
  for (std::int64_t k : {1, 2, 3, 5}) {
    const auto samples = structured_down_sets(100, 7000 + static_cast<std::uint64_t>(k));
    const auto rep = absorber_check_kN(k, samples);
    if (rep.verdict.status != Status::CertifiedYes)
      return {false, "k = " + std::to_string(k) + ": " + rep.verdict.note};
    replays += rep.replays.size();
    const IntSetExpr kN(UpRay{0, k});
    for (const auto& G : samples) {
      if (!absorber_threshold(G, k)) continue;
      const IntSetExpr full = sumset(G, kN);
      for (const auto& g : enumerate(G, Window{-20, 20})) {
        if (!same_set(sumset(point_delete(G, g).set, kN), full))
          return {false, "k = " + std::to_string(k) + ": removing " + g.str() + " changes G + kN"};
        ++equalities;
      }
    }
  }
  return {true, std::to_string(replays) + " replays valid, " + std::to_string(equalities) + " symbolic equalities"};
}

// ---- 7: shift and reflection ----

Outcome invariance() {
  int sets = 0;
  for (const auto& s : corpus::mixed()) {
    ++sets;
    const Status base = classify(s).existence;
    for (const BigInt& d : {BigInt(-7), BigInt(13), BigInt(1000)})
      if (classify(shift(s, d)).existence != base) return {false, "shift by " + d.str() + " changes the status"};
    if (classify(reflect(s)).existence != base) return {false, "reflection changes the status"};
  }
  return {true, std::to_string(sets) + " sets, shifts -7, 13, 1000 and reflection"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 example values and Theorem 1", example_values},
      {"2 remark divergence and count violation", remark_values},
      {"3 sumset vs pairwise sums", sumset_pairs},
      {"4 modular search on m <= 4", modular_profiles},
      {"5 Theorem 2 greedy corroboration", theorem2_families},
      {"6 absorber property of kN", absorber},
      {"7 classify under shift and reflection", invariance},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                static_cast<long long>(ms));
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
