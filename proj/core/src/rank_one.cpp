#include "kml/rank_one.hpp"

#include "kml/error.hpp"

namespace kml {

Elem QuadExt::norm(const FieldCtx& F, Elem u, Elem v) const {
  return F.add(F.sub(F.mul(u, u), F.mul(c1, F.mul(u, v))), F.mul(c0, F.mul(v, v)));
}

Mat2 QuadExt::multiplication_matrix(const FieldCtx& F, Elem u, Elem v) const {
  // (u + v x) * 1 = u + v x ; (u + v x) * x = -c0 v + (u - c1 v) x
  return Mat2::make(F, u, F.neg(F.mul(c0, v)), v, F.sub(u, F.mul(c1, v)));
}

QuadExt quad_ext(const FieldCtx& F) {
  for (Elem c0 = 0; c0 < F.q(); ++c0) {
    for (Elem c1 = 0; c1 < F.q(); ++c1) {
      bool has_root = false;
      for (Elem x = 0; x < F.q() && !has_root; ++x) {
        has_root = F.add(F.add(F.mul(x, x), F.mul(c1, x)), c0) == 0;
      }
      if (!has_root) return QuadExt{c0, c1};
    }
  }
  throw InternalError("quad_ext: no irreducible quadratic");
}

namespace {

std::size_t matrix_order(const FieldCtx& F, const Mat2& m) {
  std::size_t k = 1;
  Mat2 cur = m;
  while (!(cur == Mat2::identity())) {
    cur = mul(F, cur, m);
    ++k;
  }
  return k;
}

}  // namespace

Mat2 nonsplit_torus_generator(const FieldCtx& F) {
  const QuadExt ext = quad_ext(F);
  for (Elem u = 0; u < F.q(); ++u) {
    for (Elem v = 0; v < F.q(); ++v) {
      if (ext.norm(F, u, v) != 1) continue;
      Mat2 m = ext.multiplication_matrix(F, u, v);
      if (matrix_order(F, m) == static_cast<std::size_t>(F.q()) + 1) return m;
    }
  }
  throw InternalError("nonsplit_torus: no element of order q+1");
}

Mat2 torus_inverter(const FieldCtx& F, const Mat2& h) {
  const Mat2 hinv = inverse(F, h);
  for (const Mat2& g : enumerate_sl2(F)) {
    if (mul(F, mul(F, g, h), inverse(F, g)) == hinv) return g;
  }
  throw InternalError("torus_normalizer: no element of SL_2(q) inverts the non-split torus");
}

FiniteActionGroup nonsplit_torus(std::shared_ptr<const FieldCtx> F) {
  auto model = LeviModel::rank_one(F);
  return FiniteActionGroup::generate(model, {model->from_factor(0, nonsplit_torus_generator(*F))});
}

FiniteActionGroup torus_normalizer(const FiniteActionGroup& h) {
  if (!h.has_labels() || h.model()->members().size() != 1) {
    throw InvalidArgument("torus_normalizer: expects a non-split torus in a rank-one Levi model");
  }
  const auto& model = h.model();
  const FieldCtx& F = model->field();
  const int j = model->members()[0];
  Mat2 gen = Mat2::identity();
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (h.element_order(i) == h.order()) {
      gen = h.label(i).factors[0];
      break;
    }
  }
  std::vector<LeviElement> gens;
  for (std::size_t g : h.generating_set()) gens.push_back(h.label(g));
  gens.push_back(model->from_factor(j, torus_inverter(F, gen)));
  return FiniteActionGroup::generate(model, gens);
}

std::string to_string(AiCase c) {
  switch (c) {
    case AiCase::p2: return "p2";
    case AiCase::q3mod4: return "q3mod4";
    case AiCase::q1mod4: return "q1mod4";
  }
  return "?";
}

AiCase ai_case_for(const FieldCtx& F) {
  if (F.p() == 2) return AiCase::p2;
  return F.q() % 4 == 3 ? AiCase::q3mod4 : AiCase::q1mod4;
}

Elem sylow2_generator(const FieldCtx& F) {
  std::uint32_t odd = F.q() - 1;
  while (odd % 2 == 0) odd /= 2;
  return F.pow(F.generator(), odd);
}

std::vector<LeviElement> ai_generators(AiCase c, const LeviModel& model, int i) {
  const FieldCtx& F = model.field();
  const bool consistent = (c == AiCase::p2 && F.p() == 2) || (c == AiCase::q3mod4 && F.q() % 4 == 3) ||
                          (c == AiCase::q1mod4 && F.q() % 4 == 1);
  if (!consistent) {
    throw InvalidArgument("build_Ai: case " + to_string(c) + " does not apply to q=" + std::to_string(F.q()));
  }
  const Mat2 h = nonsplit_torus_generator(F);
  std::vector<LeviElement> gens;
  switch (c) {
    case AiCase::p2:
      gens.push_back(model.from_factor(i, h));
      break;
    case AiCase::q1mod4:
      gens.push_back(model.from_factor(i, mul(F, h, h)));
      break;
    case AiCase::q3mod4: {
      gens.push_back(model.from_factor(i, h));
      gens.push_back(model.from_factor(i, torus_inverter(F, h)));
      const Elem s = sylow2_generator(F);
      for (int k = 0; k < model.rank(); ++k) {
        TorusElement t = torus_identity(model.rank());
        t.t[k] = s;
        gens.push_back(model.from_torus(t));
      }
      break;
    }
  }
  return gens;
}

FiniteActionGroup build_Ai(AiCase c, std::shared_ptr<const FieldCtx> F, const GCM& a, int i) {
  auto model = std::make_shared<const LeviModel>(F, a, TypeMask{1} << i);
  return FiniteActionGroup::generate(model, ai_generators(c, *model, i));
}

}  // namespace kml
