#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kml/group.hpp"

namespace kml {

/// F_{q^2} = F_q[x] / (x^2 + c1 x + c0).
struct QuadExt {
  Elem c0 = 0;
  Elem c1 = 0;

  /// N(u + v x) = u^2 - c1 u v + c0 v^2.
  Elem norm(const FieldCtx& F, Elem u, Elem v) const;
  /// Matrix of multiplication by u + v x in the basis {1, x}.
  Mat2 multiplication_matrix(const FieldCtx& F, Elem u, Elem v) const;
};

/// Lexicographically smallest irreducible monic quadratic over F_q.
QuadExt quad_ext(const FieldCtx& F);

/// Generator of the norm-one subgroup of F_{q^2}^*, as an element of SL_2(q):
/// the first norm-one element of order q+1 in (u, v) order.
Mat2 nonsplit_torus_generator(const FieldCtx& F);

/// First element of SL_2(q) (in enumerate_sl2 order) conjugating h to h^-1.
Mat2 torus_inverter(const FieldCtx& F, const Mat2& h);

/// H <= SL_2(q) cyclic of order q+1, acting on P^1(F_q) (rank-one model).
FiniteActionGroup nonsplit_torus(std::shared_ptr<const FieldCtx> F);
/// N_{SL_2(q)}(H) = <H, inverter>, order 2(q+1), in the same model as h.
FiniteActionGroup torus_normalizer(const FiniteActionGroup& h);

enum class AiCase { p2, q3mod4, q1mod4 };

std::string to_string(AiCase c);
/// The case dictated by q, or throws if none applies (never: every q falls in one).
AiCase ai_case_for(const FieldCtx& F);

/// Generator of the Sylow 2-subgroup of F_q^*.
Elem sylow2_generator(const FieldCtx& F);

/// Generators of A_i expressed in a Levi model whose type contains i:
///   p2      -> H_i
///   q3mod4  -> N_{M_i}(H_i) together with T_0 = Syl_2(T)
///   q1mod4  -> the index-2 subgroup of H_i
std::vector<LeviElement> ai_generators(AiCase c, const LeviModel& model, int i);

/// A_i inside L_i, acting on P^1(F_q) = residue of type {i}.
FiniteActionGroup build_Ai(AiCase c, std::shared_ptr<const FieldCtx> F, const GCM& a, int i);

}  // namespace kml
