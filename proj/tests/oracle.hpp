#pragma once

// Brute-force reference implementations. Deliberately naive and independent of the library internals.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "amc/setalg/ops.hpp"

namespace oracle {

using amc::BigInt;

inline bool in_component(const amc::ApComponent& c, std::int64_t n) {
  return std::visit(
      [n](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, amc::Finite>) {
          for (const auto& v : x.values)
            if (v == n) return true;
          return false;
        } else {
          const auto step = static_cast<std::int64_t>(x.step);
          if constexpr (std::is_same_v<T, amc::UpRay>) {
            const auto a = static_cast<std::int64_t>(x.start);
            return n >= a && (n - a) % step == 0;
          } else if constexpr (std::is_same_v<T, amc::DownRay>) {
            const auto a = static_cast<std::int64_t>(x.start);
            return n <= a && (a - n) % step == 0;
          } else {
            const auto r = static_cast<std::int64_t>(x.residue);
            return ((n - r) % step + step) % step == 0;
          }
        }
      },
      c);
}

inline bool in_components(const std::vector<amc::ApComponent>& cs, std::int64_t n) {
  for (const auto& c : cs)
    if (in_component(c, n)) return true;
  return false;
}

inline std::vector<std::int64_t> scan(const std::vector<amc::ApComponent>& cs, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = lo; n <= hi; ++n)
    if (in_components(cs, n)) out.push_back(n);
  return out;
}

/// Direct block test for a power family, written from the definition.
inline bool in_family(const amc::PowerIntervalFamily& f, const BigInt& n) {
  for (const auto& v : f.extraFinite)
    if (v == n) return true;
  BigInt pk = 1;
  for (std::uint64_t k = 0; k < f.k0; ++k) pk *= f.p;
  for (std::uint64_t k = f.k0; k < 400; ++k, pk *= f.p) {
    const BigInt lo = f.lowCoeff * pk + f.lowOffset;
    const BigInt hi = f.highCoeff * pk + f.highOffset;
    const bool inside = f.highClosed ? (lo <= n && n <= hi) : (lo <= n && n < hi);
    if (inside) return true;
  }
  return false;
}

inline std::vector<std::int64_t> to_ints(const std::vector<BigInt>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

/// Random exact expression: up to `max_components` components with steps up to `max_step`, values near zero.
inline std::vector<amc::ApComponent> random_components(std::mt19937_64& rng, int max_components, int max_step,
                                                       int spread = 20) {
  std::uniform_int_distribution<int> count(1, max_components), kind(0, 3), step(1, max_step), val(-spread, spread),
      nfin(0, 4);
  std::vector<amc::ApComponent> out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: {
        std::vector<BigInt> vs;
        for (int j = nfin(rng); j > 0; --j) vs.push_back(val(rng));
        out.push_back(amc::make_finite(std::move(vs)));
        break;
      }
      case 1: out.push_back(amc::UpRay{val(rng), step(rng)}); break;
      case 2: out.push_back(amc::DownRay{val(rng), step(rng)}); break;
      default: out.push_back(amc::Line{val(rng), step(rng)}); break;
    }
  }
  return out;
}

inline amc::PowerIntervalFamily example_w() {
  amc::PowerIntervalFamily f;
  f.p = 2;
  f.lowCoeff = 1;
  f.lowOffset = 9;
  f.highCoeff = 2;
  f.highOffset = 0;
  f.highClosed = false;
  f.k0 = 4;
  f.extraFinite = {1};
  return f;
}

inline amc::PowerIntervalFamily remark_w() {
  amc::PowerIntervalFamily f;
  f.p = 10;
  f.lowCoeff = 1;
  f.lowOffset = 0;
  f.highCoeff = 2;
  f.highOffset = 0;
  f.highClosed = true;
  f.k0 = 0;
  return f;
}

}  // namespace oracle
