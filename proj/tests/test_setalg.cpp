#include <gtest/gtest.h>

#include <random>

#include "amc/setalg/ops.hpp"
#include "oracle.hpp"

using namespace amc;

namespace {

std::vector<std::int64_t> ints(const IntSetExpr& s, std::int64_t lo, std::int64_t hi) {
  return oracle::to_ints(enumerate(s, make_window(lo, hi)));
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (auto x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

IntSetExpr comps(std::vector<ApComponent> cs) { return IntSetExpr::from_components(cs); }

}  // namespace

TEST(Member, Basics) {
  EXPECT_TRUE(member(IntSetExpr(UpRay{0, 2}), 4));
  EXPECT_FALSE(member(IntSetExpr(DownRay{-1, 3}), 2));
  const IntSetExpr w(oracle::example_w());
  EXPECT_TRUE(member(w, 25));
  EXPECT_FALSE(member(w, 24));
}

TEST(Member, InvalidFamilyRejected) {
  PowerIntervalFamily f;
  f.p = 2;
  f.lowCoeff = 1;
  f.highCoeff = 3;  // blocks [2^k, 3*2^k] overlap the next one
  EXPECT_THROW(IntSetExpr{f}, ValidationError);
  f.highCoeff = 1;
  f.p = 1;
  EXPECT_THROW(IntSetExpr{f}, ValidationError);
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(ints(IntSetExpr(oracle::example_w()), 1, 30), (std::vector<std::int64_t>{1, 25, 26, 27, 28, 29, 30}));
  EXPECT_EQ(ints(IntSetExpr(Line{0, 1}), -2, 2), range(-2, 2));
  EXPECT_EQ(ints(comps({Finite{{5}}, UpRay{10, 4}}), 0, 20), (std::vector<std::int64_t>{5, 10, 14, 18}));
}

TEST(Enumerate, WindowValidation) { EXPECT_THROW(make_window(3, 2), ValidationError); }

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(comps({UpRay{0, 2}, UpRay{0, 4}})), IntSetExpr(UpRay{0, 2}));
  auto del = point_delete(IntSetExpr(UpRay{2, 4}), 6);
  ASSERT_TRUE(del.removed);
  EXPECT_EQ(normalize(del.set), comps({Finite{{2}}, UpRay{10, 4}}));
  EXPECT_EQ(normalize(comps({UpRay{0, 2}, UpRay{1, 2}})), IntSetExpr(UpRay{0, 1}));
}

TEST(Normalize, OracleUnsupported) {
  EXPECT_THROW(normalize(IntSetExpr(oracle::example_w())), UnsupportedError);
}

TEST(Normalize, Idempotent) {
  const auto n = normalize(comps({UpRay{3, 6}, DownRay{1, 4}, Finite{{0, 2, 7}}}));
  EXPECT_EQ(normalize(n), n);
}

TEST(PointDelete, Examples) {
  EXPECT_EQ(point_delete(IntSetExpr(Line{0, 3}), 0).set, comps({DownRay{-3, 3}, UpRay{3, 3}}));
  EXPECT_EQ(point_delete(IntSetExpr(Finite{{1, 2}}), 2).set, IntSetExpr(Finite{{1}}));
  EXPECT_EQ(point_delete(IntSetExpr(UpRay{5, 5}), 10).set, comps({Finite{{5}}, UpRay{15, 5}}));
}

TEST(PointDelete, NonMemberWarns) {
  const IntSetExpr s(UpRay{0, 2});
  auto r = point_delete(s, 3);
  EXPECT_FALSE(r.removed);
  EXPECT_FALSE(r.warning.empty());
  EXPECT_EQ(r.set, s);
}

TEST(ComplementPositive, ExampleFamily) {
  const IntSetExpr wbar = complement_positive(IntSetExpr(oracle::example_w()));
  auto fam = as_upward_family(wbar);
  ASSERT_TRUE(fam.has_value());
  PowerIntervalFamily want;
  want.p = 2;
  want.lowCoeff = 1;
  want.lowOffset = 0;
  want.highCoeff = 1;
  want.highOffset = 8;
  want.k0 = 1;
  EXPECT_EQ(*fam, want);
  // Direct definition check against the block formula [2^k, 2^k+8].
  for (std::int64_t n = 1; n <= 5000; ++n) {
    bool in = false;
    for (std::int64_t pk = 2; pk <= n; pk *= 2) in = in || (pk <= n && n <= pk + 8);
    ASSERT_EQ(member(wbar, n), in) << n;
  }
}

TEST(ComplementPositive, ExactExamples) {
  EXPECT_TRUE(bounds(complement_positive(IntSetExpr(UpRay{1, 1}))).empty);
  const auto c = complement_positive(IntSetExpr(UpRay{2, 2}));
  EXPECT_EQ(ints(c, 1, 100), ints(comps({Finite{{1}}, UpRay{3, 2}}), 1, 100));
  EXPECT_TRUE(same_set(c, comps({Finite{{1}}, UpRay{3, 2}})));
}

TEST(ComplementPositive, DoubleComplementOfFamily) {
  const IntSetExpr w(oracle::remark_w());
  const auto back = complement_positive(complement_positive(w));
  for (std::int64_t n = 1; n <= 3000; ++n) ASSERT_EQ(member(back, n), member(w, n)) << n;
}

TEST(ComplementPositive, WrapperForMixedSets) {
  const IntSetExpr mixed = unite(IntSetExpr(oracle::remark_w()), IntSetExpr(UpRay{0, 7}));
  const auto c = complement_positive(mixed);
  EXPECT_TRUE(c.is_oracle());
  for (std::int64_t n = -5; n <= 500; ++n) ASSERT_EQ(member(c, n), n >= 1 && !member(mixed, n)) << n;
}

TEST(ComplementPositive, DownwardFamilyGivesExactSet) {
  const IntSetExpr down(reflect(oracle::remark_w()));
  const auto c = complement_positive(shift(down, 50));
  EXPECT_TRUE(c.is_exact());
  for (std::int64_t n = 1; n <= 300; ++n) ASSERT_EQ(member(c, n), !member(shift(down, 50), n)) << n;
}

TEST(Sumset, Examples) {
  EXPECT_EQ(sumset(IntSetExpr(UpRay{0, 2}), IntSetExpr(UpRay{1, 2})), IntSetExpr(UpRay{1, 2}));
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      EXPECT_EQ(sumset(IntSetExpr(UpRay{a, 5}), IntSetExpr(DownRay{b, 5})), IntSetExpr(Line{floor_mod(BigInt(a + b), BigInt(5)), 5}));
  EXPECT_EQ(sumset(IntSetExpr(Finite{{0, 1}}), IntSetExpr(Line{0, 3})), comps({Line{0, 3}, Line{1, 3}}));
}

TEST(Sumset, OracleUnsupported) {
  EXPECT_THROW(sumset(IntSetExpr(oracle::example_w()), IntSetExpr(UpRay{0, 1})), UnsupportedError);
}

TEST(WindowSumset, Examples) {
  auto r = window_sumset(IntSetExpr(DownRay{0, 1}), IntSetExpr(UpRay{1, 1}), make_window(-5, 5));
  EXPECT_EQ(r.soundness, Soundness::Exact);
  EXPECT_EQ(oracle::to_ints(r.members), range(-5, 5));
  r = window_sumset(IntSetExpr(Line{0, 2}), IntSetExpr(Finite{{0, 1}}), make_window(0, 3));
  EXPECT_EQ(oracle::to_ints(r.members), range(0, 3));
}

TEST(WindowSumset, OracleOperandAgainstBruteForce) {
  std::vector<BigInt> a;
  for (int v = -100; v <= 0; v += 10) a.push_back(v);
  const IntSetExpr A(Finite{a});
  const IntSetExpr W(oracle::example_w());
  auto r = window_sumset(A, W, make_window(0, 50));
  EXPECT_EQ(r.soundness, Soundness::PositiveOnly);
  std::set<std::int64_t> want;
  for (const auto& x : a)
    for (std::int64_t y = -200; y <= 250; ++y)
      if (oracle::in_family(oracle::example_w(), y)) {
        const auto s = static_cast<std::int64_t>(x) + y;
        if (0 <= s && s <= 50) want.insert(s);
      }
  EXPECT_EQ(oracle::to_ints(r.members), std::vector<std::int64_t>(want.begin(), want.end()));
}

TEST(Bounds, Basics) {
  auto b = bounds(comps({UpRay{4, 3}, Finite{{-2}}}));
  EXPECT_EQ(b.inf, BigInt(-2));
  EXPECT_FALSE(b.sup);
  b = bounds(IntSetExpr(oracle::example_w()));
  EXPECT_EQ(b.inf, BigInt(1));
  b = bounds(reflect(IntSetExpr(oracle::example_w())));
  EXPECT_EQ(b.sup, BigInt(-1));
  EXPECT_FALSE(b.inf);
  b = bounds(complement_positive(unite(IntSetExpr(oracle::remark_w()), IntSetExpr(UpRay{0, 7}))));
  EXPECT_EQ(b.inf, BigInt(3));
  EXPECT_FALSE(b.sup);
}

TEST(NextMember, FamilyAndWrapper) {
  const IntSetExpr w(oracle::example_w());
  EXPECT_EQ(next_member(w, 1), BigInt(25));
  EXPECT_EQ(prev_member(w, 25), BigInt(1));
  const auto wrapped = shift(complement_positive(unite(w, IntSetExpr(Finite{{2}}))), 100);
  for (std::int64_t n = 90; n <= 200; ++n) {
    std::optional<BigInt> want;
    for (std::int64_t y = n + 1; y <= 400 && !want; ++y)
      if (member(wrapped, y)) want = y;
    ASSERT_EQ(next_member(wrapped, n), want) << n;
  }
}

// ---- properties ----

TEST(Property, NormalFormRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cs = oracle::random_components(rng, 4, 6);
    const IntSetExpr s = comps(cs);
    const auto n = normalize(s);
    ASSERT_EQ(ints(n, -80, 80), oracle::scan(cs, -80, 80)) << "trial " << trial;
    ASSERT_EQ(ints(s, -80, 80), oracle::scan(cs, -80, 80)) << "trial " << trial;
    ASSERT_EQ(normalize(n), n);
  }
}

TEST(Property, CanonicalFormIsUniquePerDenotedSet) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    auto cs = oracle::random_components(rng, 4, 6);
    // Same set, different presentation: split every ray into two interleaved rays of double step.
    std::vector<ApComponent> alt;
    for (const auto& c : cs) {
      if (const auto* u = std::get_if<UpRay>(&c)) {
        alt.push_back(UpRay{u->start, u->step * 2});
        alt.push_back(UpRay{u->start + u->step, u->step * 2});
      } else if (const auto* d = std::get_if<DownRay>(&c)) {
        alt.push_back(DownRay{d->start, d->step * 2});
        alt.push_back(DownRay{d->start - d->step, d->step * 2});
      } else {
        alt.push_back(c);
      }
    }
    ASSERT_EQ(normalize(comps(cs)), normalize(comps(alt))) << "trial " << trial;
  }
}

TEST(Property, SumsetMatchesPairwiseSums) {
  std::mt19937_64 rng(5150);
  const std::int64_t span = 60;
  for (int trial = 0; trial < 200; ++trial) {
    const auto ca = oracle::random_components(rng, 4, 6);
    const auto cb = oracle::random_components(rng, 4, 6);
    const auto ea = oracle::scan(ca, -100 - span, 100 + span);
    const auto eb = oracle::scan(cb, -100 - span, 100 + span);
    std::set<std::int64_t> want;
    for (auto x : ea)
      for (auto y : eb)
        if (-100 <= x + y && x + y <= 100) want.insert(x + y);
    const auto got = ints(sumset(comps(ca), comps(cb)), -100, 100);
    ASSERT_EQ(got, std::vector<std::int64_t>(want.begin(), want.end())) << "trial " << trial;
  }
}

TEST(Property, DeMorganOnWindows) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const auto cs = oracle::random_components(rng, 4, 6);
    const auto c = complement_positive(comps(cs));
    const std::int64_t B = trial % 3 == 0 ? 10000 : 300;
    std::vector<std::int64_t> want;
    for (std::int64_t n = 1; n <= B; ++n)
      if (!oracle::in_components(cs, n)) want.push_back(n);
    ASSERT_EQ(ints(c, 1, B), want) << "trial " << trial;
  }
  for (const auto& f : {oracle::example_w(), oracle::remark_w()}) {
    const auto c = complement_positive(IntSetExpr(f));
    std::vector<std::int64_t> want;
    for (std::int64_t n = 1; n <= 10000; ++n)
      if (!oracle::in_family(f, n)) want.push_back(n);
    ASSERT_EQ(ints(c, 1, 10000), want);
  }
}

TEST(Property, PointDeleteAndSumsetRenormalizeWithoutLoss) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cs = oracle::random_components(rng, 3, 6);
    const IntSetExpr s = comps(cs);
    const auto members = oracle::scan(cs, -30, 30);
    if (members.empty()) continue;
    const auto victim = members[static_cast<std::size_t>(trial) % members.size()];
    const auto del = point_delete(s, victim).set;
    auto want = oracle::scan(cs, -90, 90);
    std::erase(want, victim);
    ASSERT_EQ(ints(del, -90, 90), want) << "trial " << trial;
    ASSERT_EQ(ints(normalize(del), -90, 90), want);
    const auto sum = sumset(s, del);
    ASSERT_EQ(ints(normalize(sum), -50, 50), ints(sum, -50, 50));
  }
}

TEST(Property, FamilyMembershipAgreesWithBlocksLogSampled) {
  std::mt19937_64 rng(99);
  for (const auto& f : {oracle::example_w(), oracle::remark_w()}) {
    const IntSetExpr s(f);
    BigInt top = ipow(f.p, 60);
    for (BigInt n = 1; n <= top; n = n * 3 / 2 + 1) {
      for (int d = -2; d <= 2; ++d) {
        const BigInt x = n + d;
        ASSERT_EQ(member(s, x), oracle::in_family(f, x)) << x;
      }
    }
    // Block endpoints and their neighbours are the interesting points.
    for (std::uint64_t k = f.k0; k <= 60; ++k) {
      for (const BigInt& e : {f.block_low(k), f.block_high(k)})
        for (int d = -1; d <= 1; ++d) ASSERT_EQ(member(s, e + d), oracle::in_family(f, e + d)) << e + d;
    }
  }
  (void)rng;
}

TEST(Property, ShiftAndReflectCommuteWithMembership) {
  std::mt19937_64 rng(8);
  const std::vector<IntSetExpr> sets = {
      IntSetExpr(oracle::example_w()),
      complement_positive(IntSetExpr(oracle::remark_w())),
      complement_positive(unite(IntSetExpr(oracle::remark_w()), IntSetExpr(UpRay{0, 7}))),
      comps({UpRay{3, 4}, DownRay{-2, 3}}),
  };
  std::uniform_int_distribution<int> sh(-40, 40);
  for (const auto& s : sets) {
    const int c = sh(rng);
    const auto t = shift(s, c);
    const auto r = reflect(s);
    for (std::int64_t n = -150; n <= 150; ++n) {
      ASSERT_EQ(member(t, n), member(s, n - c));
      ASSERT_EQ(member(r, n), member(s, -n));
    }
    EXPECT_EQ(ints(t, -150, 150).size(), ints(s, -150 - c, 150 - c).size());
  }
}

TEST(Property, IntersectionAndDifferenceMatchScan) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ca = oracle::random_components(rng, 4, 6);
    const auto cb = oracle::random_components(rng, 4, 6);
    const auto i = intersection(comps(ca), comps(cb));
    const auto d = difference(comps(ca), comps(cb));
    for (std::int64_t n = -120; n <= 120; ++n) {
      const bool a = oracle::in_components(ca, n), b = oracle::in_components(cb, n);
      ASSERT_EQ(member(i, n), a && b) << "trial " << trial << " n " << n;
      ASSERT_EQ(member(d, n), a && !b) << "trial " << trial << " n " << n;
    }
  }
}
