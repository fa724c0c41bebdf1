#pragma once

// JSON documents for sets and periodic profiles. Every integer travels as a decimal string.

#include <string>
#include <string_view>

#include <json.hpp>

#include "amc/periodic.hpp"

namespace amc::io {

using Json = nlohmann::json;

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Syntax errors carry line:column; shape errors carry the JSON pointer of the offending node.
inline Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto p = msg.find(": syntax error"); p != std::string::npos) msg = msg.substr(p + 2);
    throw ParseError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg);
  }
}

namespace detail {

[[noreturn]] inline void fail(const std::string& at, const std::string& what) {
  throw ParseError((at.empty() ? std::string("/") : at) + ": " + what);
}

inline const Json& field(const Json& j, const std::string& at, const char* key) {
  if (!j.is_object()) fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing field '") + key + "'");
  return *it;
}

inline BigInt integer(const Json& j, const std::string& at) {
  if (!j.is_string()) fail(at, "integers must be decimal strings");
  try {
    return parse_bigint(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(at, e.what());
  }
}

inline std::int64_t small(const Json& j, const std::string& at, std::int64_t lo, std::int64_t hi) {
  const BigInt v = integer(j, at);
  if (v < lo || v > hi) fail(at, "value " + v.str() + " out of range");
  return static_cast<std::int64_t>(v);
}

inline std::vector<BigInt> integers(const Json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], at + "/" + std::to_string(i)));
  return out;
}

inline Json strings(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json strings(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}

inline void piece_list(const Json& j, const std::string& at, std::vector<Piece>& out);

inline Json piece_to_json(const Piece& p);

}  // namespace detail

Json to_json(const IntSetExpr& s);

inline Json detail::piece_to_json(const Piece& p) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return {{"kind", "finite"}, {"values", strings(x.values)}};
        } else if constexpr (std::is_same_v<T, UpRay>) {
          return {{"kind", "upray"}, {"start", x.start.str()}, {"step", x.step.str()}};
        } else if constexpr (std::is_same_v<T, DownRay>) {
          return {{"kind", "downray"}, {"start", x.start.str()}, {"step", x.step.str()}};
        } else if constexpr (std::is_same_v<T, Line>) {
          return {{"kind", "line"}, {"residue", x.residue.str()}, {"step", x.step.str()}};
        } else if constexpr (std::is_same_v<T, PowerIntervalFamily>) {
          return {{"kind", "powerfamily"},
                  {"p", x.p.str()},
                  {"lowCoeff", x.lowCoeff.str()},
                  {"lowOffset", x.lowOffset.str()},
                  {"highCoeff", x.highCoeff.str()},
                  {"highOffset", x.highOffset.str()},
                  {"highClosed", x.highClosed},
                  {"k0", std::to_string(x.k0)},
                  {"extra", strings(x.extraFinite)}};
        } else if constexpr (std::is_same_v<T, PositiveComplement>) {
          return {{"kind", "complement"}, {"of", to_json(*x.of)}};
        } else {
          return {{"kind", "affine"}, {"sign", std::to_string(x.sign)}, {"offset", x.offset.str()}, {"of", to_json(*x.of)}};
        }
      },
      p);
}

/// A single piece serializes as that node; anything else as a union.
inline Json to_json(const IntSetExpr& s) {
  if (s.pieces().size() == 1) return detail::piece_to_json(s.pieces().front());
  Json of = Json::array();
  for (const auto& p : s.pieces()) of.push_back(detail::piece_to_json(p));
  return {{"kind", "union"}, {"of", of}};
}

namespace detail {

inline IntSetExpr set_at(const Json& j, const std::string& at) {
  std::vector<Piece> ps;
  piece_list(j, at, ps);
  try {
    return IntSetExpr(std::move(ps));
  } catch (const ValidationError& e) {
    fail(at, e.what());
  }
}

inline void piece_list(const Json& j, const std::string& at, std::vector<Piece>& out) {
  const Json& k = field(j, at, "kind");
  if (!k.is_string()) fail(at + "/kind", "expected a string");
  const std::string kind = k.get<std::string>();
  auto num = [&](const char* key) { return integer(field(j, at, key), at + "/" + key); };
  if (kind == "finite") {
    out.push_back(make_finite(integers(field(j, at, "values"), at + "/values")));
  } else if (kind == "upray") {
    out.push_back(UpRay{num("start"), num("step")});
  } else if (kind == "downray") {
    out.push_back(DownRay{num("start"), num("step")});
  } else if (kind == "line") {
    out.push_back(Line{num("residue"), num("step")});
  } else if (kind == "powerfamily") {
    PowerIntervalFamily f;
    f.p = num("p");
    f.lowCoeff = num("lowCoeff");
    f.lowOffset = num("lowOffset");
    f.highCoeff = num("highCoeff");
    f.highOffset = num("highOffset");
    const Json& hc = field(j, at, "highClosed");
    if (!hc.is_boolean()) fail(at + "/highClosed", "expected true or false");
    f.highClosed = hc.get<bool>();
    f.k0 = static_cast<std::uint64_t>(small(field(j, at, "k0"), at + "/k0", 0, static_cast<std::int64_t>(kMaxExponent)));
    if (j.contains("extra")) f.extraFinite = make_finite(integers(j["extra"], at + "/extra")).values;
    out.push_back(std::move(f));
  } else if (kind == "union") {
    const Json& of = field(j, at, "of");
    if (!of.is_array()) fail(at + "/of", "expected an array");
    for (std::size_t i = 0; i < of.size(); ++i) piece_list(of[i], at + "/of/" + std::to_string(i), out);
  } else if (kind == "complement") {
    out.push_back(PositiveComplement{std::make_shared<const IntSetExpr>(set_at(field(j, at, "of"), at + "/of"))});
  } else if (kind == "affine") {
    Transformed t;
    t.sign = static_cast<int>(small(field(j, at, "sign"), at + "/sign", -1, 1));
    if (t.sign == 0) fail(at + "/sign", "sign must be 1 or -1");
    t.offset = num("offset");
    t.of = std::make_shared<const IntSetExpr>(set_at(field(j, at, "of"), at + "/of"));
    out.push_back(std::move(t));
  } else {
    fail(at + "/kind", "unknown kind '" + kind + "'");
  }
}

}  // namespace detail

inline IntSetExpr set_from_json(const Json& j) { return detail::set_at(j, ""); }

inline Json to_json(const EventuallyPeriodicProfile& p) {
  Json y1;
  if (const auto* ys = std::get_if<std::vector<BigInt>>(&p.Y1)) {
    y1 = {{"finite", detail::strings(*ys)}};
  } else {
    const auto& pr = std::get<Progressions>(p.Y1);
    y1 = {{"D", detail::strings(pr.D)}, {"k", std::to_string(pr.k)}};
  }
  return {{"m", std::to_string(p.m)},
          {"Xm", detail::strings(p.Xm)},
          {"Y0", detail::strings(p.Y0)},
          {"Y1", y1},
          {"shift", p.shift.str()}};
}

inline EventuallyPeriodicProfile profile_from_json(const Json& j) {
  using detail::field;
  EventuallyPeriodicProfile p;
  p.m = detail::small(field(j, "", "m"), "/m", 1, kMaxPeriod);
  auto residues = [&](const Json& a, const std::string& at) {
    std::vector<std::int64_t> out;
    for (const auto& v : detail::integers(a, at)) {
      if (v < 0 || v >= p.m) detail::fail(at, "residue " + v.str() + " is outside [0, m-1]");
      out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
  };
  p.Xm = residues(field(j, "", "Xm"), "/Xm");
  p.Y0 = detail::integers(field(j, "", "Y0"), "/Y0");
  const Json& y1 = field(j, "", "Y1");
  if (y1.is_object() && y1.contains("finite")) {
    p.Y1 = detail::integers(y1["finite"], "/Y1/finite");
  } else {
    Progressions pr;
    pr.D = residues(field(y1, "/Y1", "D"), "/Y1/D");
    pr.k = detail::small(field(y1, "/Y1", "k"), "/Y1/k", 1, kMaxPeriod);
    p.Y1 = std::move(pr);
  }
  p.shift = j.contains("shift") ? detail::integer(j["shift"], "/shift") : BigInt(0);
  try {
    validate(p);
  } catch (const Error& e) {
    detail::fail("", e.what());
  }
  return p;
}

/// A profile document has an "m" field; anything else is a set document.
inline bool is_profile_document(const Json& j) { return j.is_object() && j.contains("m"); }

/// Either document kind, read as a set.
inline IntSetExpr read_set(std::string_view text) {
  const Json j = parse_text(text);
  return is_profile_document(j) ? reconstruct(profile_from_json(j)) : set_from_json(j);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace amc::io
