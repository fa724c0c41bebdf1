#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "amc/setalg/ap_component.hpp"
#include "amc/setalg/power_family.hpp"
#include "amc/setalg/residue_form.hpp"

namespace amc {

class IntSetExpr;

/// Z+ minus the inner set. Oracle tier.
struct PositiveComplement {
  std::shared_ptr<const IntSetExpr> of;
  bool operator==(const PositiveComplement& o) const;
};

/// {sign * x + offset : x in inner}, sign in {-1, +1}. Only wraps oracle sets that have no native transform.
struct Transformed {
  int sign = 1;
  BigInt offset;
  std::shared_ptr<const IntSetExpr> of;
  bool operator==(const Transformed& o) const;
};

using Piece = std::variant<Finite, UpRay, DownRay, Line, PowerIntervalFamily, PositiveComplement, Transformed>;

inline bool is_exact_piece(const Piece& p) { return p.index() <= 3; }

inline ApComponent as_component(const Piece& p) {
  switch (p.index()) {
    case 0: return std::get<Finite>(p);
    case 1: return std::get<UpRay>(p);
    case 2: return std::get<DownRay>(p);
    case 3: return std::get<Line>(p);
    default: throw UnsupportedError("piece is not an arithmetic-progression component");
  }
}

/// Symbolic integer set: a union of pieces. Exact when every piece is an AP component; otherwise oracle.
/// Immutable; the union of the exact pieces is laid out on a residue table at construction.
class IntSetExpr {
 public:
  IntSetExpr() : exact_(std::make_shared<detail::ResidueForm>()) {}

  explicit IntSetExpr(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    std::vector<ApComponent> comps;
    for (const auto& p : pieces_) {
      if (is_exact_piece(p)) {
        comps.push_back(as_component(p));
        validate(comps.back());
      } else if (const auto* f = std::get_if<PowerIntervalFamily>(&p)) {
        validate(*f);
        oracle_ = true;
      } else {
        oracle_ = true;
        const auto* pc = std::get_if<PositiveComplement>(&p);
        const auto* tr = std::get_if<Transformed>(&p);
        if ((pc && !pc->of) || (tr && !tr->of)) throw ValidationError("wrapper piece has no inner set");
        if (tr && tr->sign != 1 && tr->sign != -1) throw ValidationError("transform sign must be +1 or -1");
      }
    }
    exact_ = std::make_shared<detail::ResidueForm>(detail::from_components(comps));
  }

  IntSetExpr(ApComponent c) : IntSetExpr(std::vector<Piece>{std::visit([](auto& x) -> Piece { return x; }, c)}) {}
  IntSetExpr(Finite c) : IntSetExpr(std::vector<Piece>{std::move(c)}) {}
  IntSetExpr(UpRay c) : IntSetExpr(std::vector<Piece>{std::move(c)}) {}
  IntSetExpr(DownRay c) : IntSetExpr(std::vector<Piece>{std::move(c)}) {}
  IntSetExpr(Line c) : IntSetExpr(std::vector<Piece>{std::move(c)}) {}
  IntSetExpr(PowerIntervalFamily f) : IntSetExpr(std::vector<Piece>{std::move(f)}) {}

  static IntSetExpr from_components(const std::vector<ApComponent>& comps) {
    std::vector<Piece> ps;
    for (const auto& c : comps) ps.push_back(std::visit([](const auto& x) -> Piece { return x; }, c));
    return IntSetExpr(std::move(ps));
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_exact() const { return !oracle_; }
  bool is_oracle() const { return oracle_; }

  /// Union of the exact pieces (tidy, not canonical).
  const detail::ResidueForm& exact_form() const { return *exact_; }

  bool operator==(const IntSetExpr& o) const { return pieces_ == o.pieces_; }

 private:
  std::vector<Piece> pieces_;
  std::shared_ptr<const detail::ResidueForm> exact_;
  bool oracle_ = false;
};

inline bool PositiveComplement::operator==(const PositiveComplement& o) const {
  if (of == o.of) return true;
  return of && o.of && *of == *o.of;
}

inline bool Transformed::operator==(const Transformed& o) const {
  if (sign != o.sign || offset != o.offset) return false;
  if (of == o.of) return true;
  return of && o.of && *of == *o.of;
}

inline IntSetExpr unite(const IntSetExpr& a, const IntSetExpr& b) {
  std::vector<Piece> ps = a.pieces();
  ps.insert(ps.end(), b.pieces().begin(), b.pieces().end());
  return IntSetExpr(std::move(ps));
}

inline IntSetExpr make_positive_complement(IntSetExpr inner) {
  return IntSetExpr(std::vector<Piece>{PositiveComplement{std::make_shared<const IntSetExpr>(std::move(inner))}});
}

}  // namespace amc
