#pragma once

#include "amc/setalg/power_family.hpp"

namespace amc {

/// {1} ∪ ⋃_{k>=4} [2^k + 9, 2^(k+1))
inline PowerIntervalFamily doubling_blocks_family() {
  PowerIntervalFamily f;
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

/// ⋃_{k>=0} [10^k, 2·10^k]
inline PowerIntervalFamily decade_blocks_family() {
  PowerIntervalFamily f;
  f.p = 10;
  f.lowCoeff = 1;
  f.lowOffset = 0;
  f.highCoeff = 2;
  f.highOffset = 0;
  f.highClosed = true;
  f.k0 = 0;
  return f;
}

}  // namespace amc
