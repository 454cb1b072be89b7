#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kml/field.hpp"

namespace kml {

using Elem = FieldCtx::Elem;

/// 2x2 matrix [[a, b], [c, d]] over F_q acting on column vectors.
struct Mat2 {
  Elem a = 1, b = 0, c = 0, d = 1;
  Elem det = 1;

  static Mat2 make(const FieldCtx& F, Elem a, Elem b, Elem c, Elem d);
  static Mat2 identity() { return {}; }

  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

Mat2 mul(const FieldCtx& F, const Mat2& x, const Mat2& y);
Mat2 inverse(const FieldCtx& F, const Mat2& x);
Mat2 scalar(const FieldCtx& F, Elem s);
std::string to_string(const FieldCtx& F, const Mat2& m);

/// Conjugation by diag(s, 1): [[a, s b], [s^-1 c, d]].
Mat2 conj_diag(const FieldCtx& F, const Mat2& m, Elem s);

/// Points of P^1(F_q): index x < q is [x:1], index q is [1:0]. Base point 0 = [0:1].
std::uint32_t proj_line_size(const FieldCtx& F);
std::vector<std::pair<Elem, Elem>> proj_line(const FieldCtx& F);
std::uint32_t proj_point_index(const FieldCtx& F, Elem x, Elem y);
std::uint32_t act_on_point(const FieldCtx& F, const Mat2& m, std::uint32_t point);
/// Action of diag(s, 1): [x:1] -> [s x : 1], [1:0] fixed.
std::uint32_t scale_point(const FieldCtx& F, Elem s, std::uint32_t point);

/// All of SL_2(q) in the fixed enumeration order: (a, b, c, d) lexicographic
/// on element codes.
std::vector<Mat2> enumerate_sl2(const FieldCtx& F);

}  // namespace kml
