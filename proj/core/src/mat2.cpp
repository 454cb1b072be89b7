#include "kml/mat2.hpp"

#include <sstream>

#include "kml/error.hpp"

namespace kml {

Mat2 Mat2::make(const FieldCtx& F, Elem a, Elem b, Elem c, Elem d) {
  Mat2 m{a, b, c, d, F.sub(F.mul(a, d), F.mul(b, c))};
  if (m.det == 0) throw InvalidArgument("Mat2: singular matrix");
  return m;
}

Mat2 mul(const FieldCtx& F, const Mat2& x, const Mat2& y) {
  Mat2 r;
  r.a = F.add(F.mul(x.a, y.a), F.mul(x.b, y.c));
  r.b = F.add(F.mul(x.a, y.b), F.mul(x.b, y.d));
  r.c = F.add(F.mul(x.c, y.a), F.mul(x.d, y.c));
  r.d = F.add(F.mul(x.c, y.b), F.mul(x.d, y.d));
  r.det = F.mul(x.det, y.det);
  return r;
}

Mat2 inverse(const FieldCtx& F, const Mat2& x) {
  const Elem di = F.inv(x.det);
  Mat2 r;
  r.a = F.mul(x.d, di);
  r.b = F.mul(F.neg(x.b), di);
  r.c = F.mul(F.neg(x.c), di);
  r.d = F.mul(x.a, di);
  r.det = di;
  return r;
}

Mat2 scalar(const FieldCtx& F, Elem s) { return Mat2::make(F, s, 0, 0, s); }

std::string to_string(const FieldCtx& F, const Mat2& m) {
  std::ostringstream os;
  os << '[' << F.to_string(m.a) << ' ' << F.to_string(m.b) << "; " << F.to_string(m.c) << ' ' << F.to_string(m.d)
     << ']';
  return os.str();
}

Mat2 conj_diag(const FieldCtx& F, const Mat2& m, Elem s) {
  if (s == 1) return m;
  Mat2 r = m;
  r.b = F.mul(s, m.b);
  r.c = F.mul(F.inv(s), m.c);
  return r;
}

std::uint32_t proj_line_size(const FieldCtx& F) { return F.q() + 1; }

std::vector<std::pair<Elem, Elem>> proj_line(const FieldCtx& F) {
  std::vector<std::pair<Elem, Elem>> pts;
  pts.reserve(F.q() + 1);
  for (Elem x = 0; x < F.q(); ++x) pts.emplace_back(x, 1);
  pts.emplace_back(1, 0);
  return pts;
}

std::uint32_t proj_point_index(const FieldCtx& F, Elem x, Elem y) {
  if (y == 0) {
    if (x == 0) throw InvalidArgument("proj_point_index: zero vector");
    return F.q();
  }
  return F.div(x, y);
}

std::uint32_t act_on_point(const FieldCtx& F, const Mat2& m, std::uint32_t point) {
  Elem x = 1, y = 0;
  if (point < F.q()) {
    x = point;
    y = 1;
  }
  return proj_point_index(F, F.add(F.mul(m.a, x), F.mul(m.b, y)), F.add(F.mul(m.c, x), F.mul(m.d, y)));
}

std::uint32_t scale_point(const FieldCtx& F, Elem s, std::uint32_t point) {
  if (point == F.q()) return point;
  return F.mul(s, point);
}

std::vector<Mat2> enumerate_sl2(const FieldCtx& F) {
  std::vector<Mat2> out;
  const Elem q = F.q();
  out.reserve(static_cast<std::size_t>(q) * (static_cast<std::size_t>(q) * q - 1));
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      for (Elem c = 0; c < q; ++c) {
        // ad - bc = 1 determines d when a != 0; otherwise need -bc = 1.
        if (a != 0) {
          const Elem d = F.div(F.add(1, F.mul(b, c)), a);
          out.push_back(Mat2{a, b, c, d, 1});
        } else {
          if (F.mul(b, c) != F.neg(1)) continue;
          for (Elem d = 0; d < q; ++d) out.push_back(Mat2{a, b, c, d, 1});
        }
      }
    }
  }
  return out;
}

}  // namespace kml
