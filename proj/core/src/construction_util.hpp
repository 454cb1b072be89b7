#pragma once

#include <optional>
#include <set>
#include <string>

#include "kml/error.hpp"
#include "kml/group.hpp"
#include "kml/mat2.hpp"

namespace kml {
struct ConstructionRequest;
class CoxeterMatrix;
}  // namespace kml

namespace kml::detail {

std::vector<TypeMask> fp_factors(const ConstructionRequest& req, const CoxeterMatrix& m);
std::uint32_t surface_face_count(const ConstructionRequest& req, int n);

inline std::string covering_word(bool pass) { return pass ? "pass" : "fail"; }

/// First element of SL_2(q), in enumeration order, sending the base point
/// off the orbit of the group on P^1 (or onto it, for the deliberate defect).
inline Mat2 off_orbit_element(const FieldCtx& field, const FiniteActionGroup& ai, bool inside = false) {
  const auto orbit = ai.orbit(0);
  const std::set<std::uint32_t> in_orbit(orbit.begin(), orbit.end());
  for (const auto& g : enumerate_sl2(field)) {
    if ((in_orbit.count(act_on_point(field, g, 0)) > 0) == inside) return g;
  }
  throw InternalError("no element of SL_2 moves the base point off the A_i-orbit");
}

}  // namespace kml::detail
