#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "amc/periodic.hpp"
#include "oracle.hpp"

using namespace amc;

namespace {

EventuallyPeriodicProfile finite_profile(std::int64_t m, std::vector<std::int64_t> xm, std::vector<BigInt> y1,
                                         std::vector<BigInt> y0 = {}, BigInt shift = 0) {
  EventuallyPeriodicProfile p;
  p.m = m;
  p.Xm = std::move(xm);
  p.Y0 = std::move(y0);
  p.Y1 = std::move(y1);
  p.shift = shift;
  return p;
}

EventuallyPeriodicProfile progression_profile(std::int64_t m, std::vector<std::int64_t> xm, std::vector<std::int64_t> d,
                                              std::int64_t k) {
  EventuallyPeriodicProfile p;
  p.m = m;
  p.Xm = std::move(xm);
  p.Y1 = Progressions{std::move(d), k};
  return p;
}

// Membership straight from the profile definition.
bool brute_in_profile(const EventuallyPeriodicProfile& p, std::int64_t n) {
  const std::int64_t v = n - static_cast<std::int64_t>(p.shift);
  if (v >= 0 && std::count(p.Xm.begin(), p.Xm.end(), ((v % p.m) + p.m) % p.m)) return true;
  for (const auto& y : p.Y0)
    if (y == v) return true;
  if (const auto* ys = std::get_if<std::vector<BigInt>>(&p.Y1)) {
    for (const auto& y : *ys)
      if (y == v) return true;
  } else {
    const auto& pr = std::get<Progressions>(p.Y1);
    for (auto d : pr.D)
      if (v >= d && (v - d) % (p.m * pr.k) == 0) return true;
  }
  return false;
}

EventuallyPeriodicProfile random_profile(std::mt19937_64& rng, bool allow_progressions = true) {
  std::uniform_int_distribution<int> mdist(1, 6), coin(0, 1), kdist(1, 3), sh(-20, 20), cnt(0, 3);
  EventuallyPeriodicProfile p;
  p.m = mdist(rng);
  std::vector<std::int64_t> other;
  for (std::int64_t r = 0; r < p.m; ++r) (coin(rng) ? p.Xm : other).push_back(r);
  if (p.Xm.empty()) {
    p.Xm.push_back(other.back());
    other.pop_back();
  }
  std::uniform_int_distribution<int> depth(1, 6);
  std::set<BigInt> y0;
  for (int i = cnt(rng); i > 0; --i)
    y0.insert(BigInt(p.Xm[rng() % p.Xm.size()]) - BigInt(p.m) * depth(rng));
  p.Y0.assign(y0.begin(), y0.end());
  if (allow_progressions && !other.empty() && coin(rng)) {
    Progressions pr;
    for (auto r : other)
      if (coin(rng)) pr.D.push_back(r);
    pr.k = kdist(rng);
    p.Y1 = pr;
  } else {
    std::set<BigInt> y1;
    std::uniform_int_distribution<int> spread(-4, 8);
    for (int i = other.empty() ? 0 : cnt(rng); i > 0; --i)
      y1.insert(BigInt(other[rng() % other.size()]) + BigInt(p.m) * spread(rng));
    p.Y1 = std::vector<BigInt>(y1.begin(), y1.end());
  }
  p.shift = sh(rng);
  return p;
}

// Condition D straight from its statement, over integers 0..m-1.
bool brute_condition_D(const EventuallyPeriodicProfile& p, const std::vector<std::int64_t>& C) {
  const auto Y = y1_residues(p);
  std::vector<std::int64_t> XY = p.Xm;
  XY.insert(XY.end(), Y.begin(), Y.end());
  for (std::int64_t r = 0; r < p.m; ++r) {
    bool hit = false;
    for (auto c : C)
      for (auto x : XY) hit = hit || (c + x) % p.m == r;
    if (!hit) return false;
  }
  for (auto c : C) {
    bool found = false;
    for (auto y : Y) {
      bool blocked = false;
      for (auto c2 : C)
        for (auto x : p.Xm) blocked = blocked || (c + y - c2 - x) % p.m == 0;
      found = found || !blocked;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<std::int64_t> subset(std::uint32_t mask, std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 0; c < m; ++c)
    if (mask >> c & 1u) out.push_back(c);
  return out;
}

}  // namespace

TEST(Decompose, RayPlusPoint) {
  IntSetExpr s({UpRay{0, 2}, Finite{{3}}});
  const auto p = decompose(s);
  EXPECT_EQ(p.m, 2);
  EXPECT_EQ(p.Xm, (std::vector<std::int64_t>{0}));
  EXPECT_TRUE(p.Y0.empty());
  EXPECT_EQ(std::get<std::vector<BigInt>>(p.Y1), (std::vector<BigInt>{3}));
  EXPECT_EQ(p.shift, 0);
  const auto r = reconstruct(p);
  for (std::int64_t n = -10; n <= 100; ++n) EXPECT_EQ(member(r, n), member(s, n)) << n;
}

TEST(Decompose, TwoRaysReadsAsProgression) {
  IntSetExpr s({UpRay{0, 2}, UpRay{1, 4}});
  const auto p = decompose(s);
  EXPECT_EQ(p.m, 4);
  // 1 + 4N is a full tail class here, so the finite reading has Y1 empty; the progression reading recovers D.
  const auto q = as_progression_profile(p);
  ASSERT_TRUE(q);
  EXPECT_FALSE(q->y1_finite());
  EXPECT_EQ(q->m, 4);
  EXPECT_EQ(q->Xm, (std::vector<std::int64_t>{0, 2}));
  EXPECT_EQ(std::get<Progressions>(q->Y1), (Progressions{{1}, 1}));
  EXPECT_TRUE(same_set(reconstruct(*q), s));
  EXPECT_TRUE(same_set(reconstruct(p), s));
}

TEST(Decompose, Errors) {
  EXPECT_THROW(decompose(IntSetExpr(Line{0, 1})), PreconditionError);
  EXPECT_THROW(decompose(IntSetExpr(Finite{{1, 2}})), PreconditionError);
  EXPECT_THROW(decompose(IntSetExpr(oracle::example_w())), UnsupportedError);
}

TEST(Profile, ValidationNamesResidue) {
  auto p = finite_profile(3, {0}, {BigInt(3)});
  try {
    validate(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("residue 0"), std::string::npos);
  }
  EXPECT_THROW(validate(finite_profile(3, {0}, {}, {BigInt(-2)})), ValidationError);
  EXPECT_THROW(validate(finite_profile(3, {0}, {}, {BigInt(3)})), ValidationError);
  EXPECT_THROW(validate(finite_profile(3, {3}, {})), ValidationError);
  EXPECT_THROW(validate(progression_profile(3, {0}, {0}, 1)), ValidationError);
}

TEST(ConditionD, Examples) {
  const auto p2 = finite_profile(2, {0}, {BigInt(1)});
  const auto r = check_condition_D(p2, {0});
  EXPECT_TRUE(r.conditionA);
  EXPECT_TRUE(r.conditionB);

  const auto p3 = finite_profile(3, {0}, {BigInt(1)});
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const auto res = check_condition_D(p3, subset(mask, 3));
    EXPECT_FALSE(res.conditionA && res.conditionB) << mask;
  }

  const auto p1 = finite_profile(1, {0}, {});
  EXPECT_FALSE(check_condition_D(p1, {0}).conditionB);
  EXPECT_THROW(check_condition_D(p3, {3}), ValidationError);
}

TEST(ConditionE, Examples) {
  const auto p2 = finite_profile(2, {0}, {BigInt(1)});
  const auto r = check_condition_E(p2, {0});
  EXPECT_TRUE(r.conditionA && r.conditionB);

  const auto p3 = finite_profile(3, {0}, {BigInt(1)});
  const auto f = check_condition_E(p3, {0, 2});
  EXPECT_FALSE(f.conditionB);
  ASSERT_TRUE(f.failingResidue);
  EXPECT_EQ(*f.failingResidue, 2);
  ASSERT_EQ(f.blockingPairs.size(), 1u);
  EXPECT_EQ(f.blockingPairs[0], std::make_pair(std::int64_t{0}, std::int64_t{0}));

  const auto pfull = finite_profile(2, {0, 1}, {});
  for (std::uint32_t mask = 1; mask < 4; ++mask) EXPECT_FALSE(check_condition_E(pfull, subset(mask, 2)).conditionB);
}

TEST(ModularSearch, Examples) {
  const auto e = search_modular_C(finite_profile(2, {0}, {BigInt(1)}));
  EXPECT_EQ(e.outcome, ModularOutcome::EWitness);
  EXPECT_EQ(e.witness, (std::vector<std::int64_t>{0}));

  EXPECT_EQ(search_modular_C(finite_profile(3, {0}, {BigInt(1)})).outcome, ModularOutcome::DInfeasible);
  EXPECT_EQ(search_modular_C(finite_profile(2, {0, 1}, {})).outcome, ModularOutcome::DInfeasible);

  EXPECT_THROW(search_modular_C(finite_profile(23, {0}, {})), BudgetError);
  EXPECT_NO_THROW(search_modular_C(finite_profile(23, {0}, {}), 23));
  EXPECT_THROW(search_modular_C(progression_profile(2, {0}, {1}, 1)), PreconditionError);
}

TEST(ModularSearch, AgreesWithPerSubsetChecks) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_profile(rng, false);
    const auto res = search_modular_C(p);
    bool any_d = false;
    std::optional<std::vector<std::int64_t>> first_e;
    for (std::uint32_t mask = 1; mask < (1u << p.m); ++mask) {
      const auto C = subset(mask, p.m);
      const auto d = check_condition_D(p, C);
      const auto ev = check_condition_E(p, C);
      EXPECT_EQ(d.conditionA && d.conditionB, brute_condition_D(p, C));
      if (ev.conditionA && ev.conditionB && !first_e) first_e = C;
      any_d = any_d || (d.conditionA && d.conditionB);
      // E implies D
      if (ev.conditionA && ev.conditionB) {
        EXPECT_TRUE(d.conditionA && d.conditionB);
      }
    }
    if (first_e) {
      EXPECT_EQ(res.outcome, ModularOutcome::EWitness);
      EXPECT_EQ(res.witness, *first_e);
    } else {
      EXPECT_EQ(res.outcome, any_d ? ModularOutcome::Undetermined : ModularOutcome::DInfeasible);
    }
  }
}

TEST(ModularSearch, PermutationInvariant) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    auto p = random_profile(rng);
    std::vector<std::int64_t> C;
    for (std::int64_t c = 0; c < p.m; ++c)
      if (rng() % 2) C.push_back(c);
    const auto d1 = check_condition_D(p, C);
    const auto e1 = check_condition_E(p, C);
    auto q = p;
    std::shuffle(q.Xm.begin(), q.Xm.end(), rng);
    std::shuffle(q.Y0.begin(), q.Y0.end(), rng);
    if (auto* ys = std::get_if<std::vector<BigInt>>(&q.Y1)) {
      std::shuffle(ys->begin(), ys->end(), rng);
    } else {
      auto& d = std::get<Progressions>(q.Y1).D;
      std::shuffle(d.begin(), d.end(), rng);
    }
    std::shuffle(C.begin(), C.end(), rng);
    const auto d2 = check_condition_D(q, C);
    const auto e2 = check_condition_E(q, C);
    EXPECT_EQ(d1.conditionA, d2.conditionA);
    EXPECT_EQ(d1.conditionB, d2.conditionB);
    EXPECT_EQ(e1.conditionA, e2.conditionA);
    EXPECT_EQ(e1.conditionB, e2.conditionB);
    EXPECT_EQ(d1.C, d2.C);
  }
}

TEST(Theorem2, Examples) {
  EXPECT_EQ(theorem2_verdict(progression_profile(2, {0}, {1}, 3)).status, Status::CertifiedNo);
  EXPECT_EQ(theorem2_verdict(finite_profile(2, {0}, {BigInt(1)})).status, Status::Inapplicable);
  EXPECT_EQ(theorem2_verdict(progression_profile(2, {0}, {}, 1)).status, Status::Inapplicable);

  const auto p = progression_profile(4, {0, 2}, {1}, 1);
  EXPECT_EQ(theorem2_verdict(p).status, Status::CertifiedNo);
  const auto g = greedy_corroboration(reconstruct(p), 300);
  EXPECT_GT(g.size, 0u);
  EXPECT_TRUE(g.all_interior_removable());
}

TEST(Theorem2, NeverMeetsAnEWitness) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 400; ++i) {
    const auto p = random_profile(rng);
    if (!p.y1_finite()) {
      // the same set in finite form
      const auto q = decompose(reconstruct(p));
      const bool no = theorem2_verdict(p).status == Status::CertifiedNo;
      const auto s = search_modular_C(q);
      EXPECT_FALSE(no && s.outcome == ModularOutcome::EWitness);
      continue;
    }
    const auto s = search_modular_C(p);
    const auto q = as_progression_profile(p);
    const bool no = q && theorem2_verdict(*q).status == Status::CertifiedNo;
    EXPECT_FALSE(no && s.outcome == ModularOutcome::EWitness);
  }
}

TEST(Profile, RoundTrip) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 60; ++i) {
    const auto p = random_profile(rng);
    const auto s = reconstruct(p);
    const auto q = decompose(s);
    const auto t = reconstruct(q);
    const auto mine = oracle::to_ints(enumerate(t, Window{-1000, 10000}));
    std::vector<std::int64_t> brute;
    for (std::int64_t n = -1000; n <= 10000; ++n)
      if (brute_in_profile(p, n)) brute.push_back(n);
    ASSERT_EQ(mine, brute) << "profile " << i;
    EXPECT_TRUE(same_set(s, t));
  }
}

TEST(Profile, WindowedCorroboration) {
  std::mt19937_64 rng(15);
  int dinf = 0, ewit = 0, distinct = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = random_profile(rng, false);
    if (p.m > 4) continue;
    const auto s = search_modular_C(p);
    const auto w = reconstruct(p);
    for (int N : {100, 200}) {
      if (s.outcome == ModularOutcome::DInfeasible) {
        ++dinf;
        EXPECT_TRUE(greedy_corroboration(w, N).all_interior_removable());
      } else if (s.outcome == ModularOutcome::EWitness) {
        ++ewit;
        const auto chk = periodic_slice_check(p, s.witness, N);
        EXPECT_TRUE(chk.covers);
        // With two Y1 elements in one class, c + y can have a second representation through the other one;
        // with pairwise incongruent Y1 the E condition leaves c + y to c alone.
        if (y1_residues(p).size() == std::get<std::vector<BigInt>>(p.Y1).size()) {
          ++distinct;
          EXPECT_TRUE(chk.essential_c.has_value());
        }
      }
    }
  }
  EXPECT_GT(dinf, 0);
  EXPECT_GT(ewit, 0);
  EXPECT_GT(distinct, 0);
}

TEST(Profile, SliceWithCongruentY1HasNoEssentialElement) {
  // W = 2N ∪ {1, 3}: E holds for C = {0}, yet every odd n = c + 1 = (c - 2) + 3 twice over.
  const auto p = finite_profile(2, {0}, {BigInt(1), BigInt(3)});
  const auto s = search_modular_C(p);
  ASSERT_EQ(s.outcome, ModularOutcome::EWitness);
  const auto chk = periodic_slice_check(p, s.witness, 50);
  EXPECT_TRUE(chk.covers);
  EXPECT_FALSE(chk.essential_c.has_value());
}

TEST(Absorber, DownRayWithEvenStep) {
  const IntSetExpr G(DownRay{0, 1});
  const auto rep = absorber_check_kN(2, {G});
  EXPECT_EQ(rep.verdict.status, Status::CertifiedYes);
  const auto full = sumset(G, IntSetExpr(UpRay{0, 2}));
  EXPECT_TRUE(same_set(full, IntSetExpr(Line{0, 1})));
  for (std::int64_t g = -5; g <= 0; ++g)
    EXPECT_TRUE(same_set(sumset(point_delete(G, g).set, IntSetExpr(UpRay{0, 2})), full)) << g;
}

TEST(Absorber, KOne) {
  const auto samples = structured_down_sets(40, 3);
  const auto rep = absorber_check_kN(1, samples);
  EXPECT_EQ(rep.verdict.status, Status::CertifiedYes);
  EXPECT_EQ(rep.accepted + rep.rejected, 40);
}

TEST(Absorber, HypothesisRejection) {
  // residue 2 mod 3 never appears in G + 3N, so the left-ray hypothesis fails
  const IntSetExpr bad({DownRay{0, 3}, Finite{{1}}});
  EXPECT_FALSE(absorber_threshold(bad, 3));
  const auto rep = absorber_check_kN(3, {bad});
  EXPECT_EQ(rep.rejected, 1);
  EXPECT_EQ(rep.verdict.status, Status::Inapplicable);

  const IntSetExpr good({DownRay{0, 1}, Finite{{1}}});
  const auto ok = absorber_check_kN(3, {good});
  EXPECT_EQ(ok.verdict.status, Status::CertifiedYes);
  const auto k3 = IntSetExpr(UpRay{0, 3});
  EXPECT_TRUE(same_set(sumset(point_delete(good, 1).set, k3), sumset(good, k3)));
}

TEST(Absorber, ReplaysAreValid) {
  for (std::int64_t k : {1, 2, 3, 5}) {
    const auto rep = absorber_check_kN(k, structured_down_sets(50, 100 + k));
    ASSERT_GT(rep.accepted, 0) << k;
    for (const auto& r : rep.replays) {
      EXPECT_TRUE(r.valid);
      // independent re-check of the representation
      EXPECT_NE(r.g1, r.g);
      EXPECT_EQ(r.g1 + k * (r.nprime + r.t + r.l), r.n);
      EXPECT_LT(r.g - k * r.t, r.nG);
    }
  }
}

TEST(AbsorberRefute, Examples) {
  const auto cx = absorber_refute(IntSetExpr(Finite{{0}}), 20);
  ASSERT_TRUE(cx);
  EXPECT_TRUE(same_set(cx->G, IntSetExpr(Line{0, 1})));
  EXPECT_EQ(cx->g, 5);
  EXPECT_EQ(cx->n, 5);
  EXPECT_FALSE(absorber_refute(IntSetExpr(UpRay{0, 2}), 50));
  EXPECT_NO_THROW(absorber_refute(IntSetExpr(Finite{{0, 1}}), 20));
}
