#pragma once

#include <algorithm>
#include <variant>
#include <vector>

#include "amc/bigint.hpp"

namespace amc {

/// Explicit finite set. Kept sorted and duplicate-free by `make_finite`.
struct Finite {
  std::vector<BigInt> values;
  bool operator==(const Finite&) const = default;
};

/// {start + step*t : t >= 0}
struct UpRay {
  BigInt start;
  BigInt step;
  bool operator==(const UpRay&) const = default;
};

/// {start - step*t : t >= 0}
struct DownRay {
  BigInt start;
  BigInt step;
  bool operator==(const DownRay&) const = default;
};

/// {residue + step*t : t in Z}
struct Line {
  BigInt residue;
  BigInt step;
  bool operator==(const Line&) const = default;
};

using ApComponent = std::variant<Finite, UpRay, DownRay, Line>;

inline Finite make_finite(std::vector<BigInt> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return Finite{std::move(values)};
}

inline void validate(const ApComponent& c) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Finite>) {
          for (std::size_t i = 1; i < x.values.size(); ++i)
            if (!(x.values[i - 1] < x.values[i])) throw ValidationError("finite values must be sorted and distinct");
        } else {
          step_to_int(x.step);
        }
      },
      c);
}

}  // namespace amc
