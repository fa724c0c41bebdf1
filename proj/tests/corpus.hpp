#pragma once

// Mixed-tier sets for invariance checks: exact AP-unions, power families, and wrapped oracle sets.

#include <random>
#include <vector>

#include "amc/named_sets.hpp"
#include "amc/setalg/ops.hpp"
#include "oracle.hpp"

namespace corpus {

using namespace amc;

inline PowerIntervalFamily family(BigInt p, BigInt lc, BigInt lo, BigInt hc, BigInt ho, bool closed, std::uint64_t k0,
                                  std::vector<BigInt> extra = {}) {
  PowerIntervalFamily f;
  f.p = p;
  f.lowCoeff = lc;
  f.lowOffset = lo;
  f.highCoeff = hc;
  f.highOffset = ho;
  f.highClosed = closed;
  f.k0 = k0;
  f.extraFinite = std::move(extra);
  return f;
}

/// Valid upward families drawn at random; invalid draws are skipped.
inline std::vector<PowerIntervalFamily> random_families(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pd(0, 2), lcd(1, 3), off(-4, 12), k0d(0, 3), coin(0, 1);
  const int ps[] = {2, 3, 10};
  std::vector<PowerIntervalFamily> out;
  while (static_cast<int>(out.size()) < count) {
    const int p = ps[pd(rng)];
    const int lc = lcd(rng);
    std::uniform_int_distribution<int> hcd(lc, lc * p);
    auto f = family(p, lc, off(rng), hcd(rng), off(rng), coin(rng) != 0, static_cast<std::uint64_t>(k0d(rng)));
    try {
      validate(f);
      if (stable_block_index(f) > 5) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back(f);
  }
  return out;
}

inline std::vector<IntSetExpr> mixed(std::uint64_t seed = 2024) {
  std::vector<IntSetExpr> out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 16; ++i) out.push_back(IntSetExpr::from_components(oracle::random_components(rng, 4, 6)));
  out.push_back(IntSetExpr(Line{0, 2}));
  out.push_back(IntSetExpr({UpRay{0, 2}, UpRay{1, 4}}));
  out.push_back(IntSetExpr({UpRay{0, 2}, Finite{{3}}}));
  out.push_back(IntSetExpr({UpRay{0, 3}, Finite{{1}}}));
  out.push_back(IntSetExpr({UpRay{0, 2}, Finite{{1, 3}}}));
  out.push_back(IntSetExpr(DownRay{5, 3}));
  out.push_back(IntSetExpr(Finite{{1, 2, 5}}));
  out.push_back(IntSetExpr(UpRay{3, 1}));
  out.push_back(IntSetExpr({UpRay{0, 5}, UpRay{2, 5}, Finite{{-3, 4}}}));

  const auto ex = doubling_blocks_family();
  const auto rm = decade_blocks_family();
  out.push_back(IntSetExpr(ex));
  out.push_back(IntSetExpr(rm));
  out.push_back(IntSetExpr(family(2, 1, 0, 1, 0, true, 1)));        // powers of two
  out.push_back(IntSetExpr(family(2, 1, 0, 2, -1, true, 0)));       // tiles
  out.push_back(IntSetExpr(family(3, 1, 0, 2, 0, true, 1, {-2})));  // extra below
  for (const auto& f : random_families(seed + 1, 12)) out.push_back(IntSetExpr(f));

  out.push_back(make_positive_complement(IntSetExpr(ex)));
  out.push_back(make_positive_complement(IntSetExpr(rm)));
  out.push_back(make_positive_complement(IntSetExpr(UpRay{0, 3})));
  out.push_back(reflect(IntSetExpr(ex)));
  out.push_back(shift(IntSetExpr(rm), 17));
  out.push_back(IntSetExpr({Piece{ex}, Piece{DownRay{0, 2}}}));
  out.push_back(IntSetExpr({Piece{rm}, Piece{Finite{{-5, -1}}}}));
  out.push_back(IntSetExpr({Piece{family(2, 1, 0, 1, 0, true, 1)}, Piece{UpRay{0, 2}}}));
  return out;
}

}  // namespace corpus
