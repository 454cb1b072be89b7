#include <algorithm>

#include "construction_util.hpp"
#include "kml/constructions.hpp"
#include "kml/error.hpp"

namespace kml {

void check_right_angled(const GCM& a, const CoxeterMatrix& m) {
  if (!right_angled_check(m)) throw HypothesisError("Coxeter matrix is not right-angled");
  const auto km = km_condition(a);
  if (!km.holds) {
    const auto [i, j] = km.violations.front();
    throw HypothesisError("KM condition fails at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  if (!weyl_infinite_check(m)) throw HypothesisError("Weyl group is finite");
}

namespace detail {

std::vector<TypeMask> fp_factors(const ConstructionRequest& req, const CoxeterMatrix& m) {
  const auto fpd = free_product_decomposition(m);
  if (!fpd.ok) throw HypothesisError(fpd.diagnostic);
  std::vector<TypeMask> out = fpd.factors;
  if (!req.partition.empty()) {
    // Parts must be the nerve components: any other split has a finite m_ij across parts.
    TypeMask seen = 0;
    for (TypeMask part : req.partition) {
      if (part == 0 || (seen & part)) throw HypothesisError("partition parts must be nonempty and disjoint");
      seen |= part;
    }
    if (seen != (TypeMask{1} << m.rank()) - 1) throw HypothesisError("partition does not cover every generator");
    for (TypeMask part : req.partition) {
      if (std::find(fpd.factors.begin(), fpd.factors.end(), part) == fpd.factors.end()) {
        throw HypothesisError("partition part " + mask_label(part) + " is not a component of the nerve");
      }
    }
    out = req.partition;
  }
  if (out.size() < 2) throw HypothesisError("W is not a free product of two or more spherical factors");
  return out;
}

std::uint32_t surface_face_count(const ConstructionRequest& req, int n) {
  std::optional<std::uint32_t> f = req.faces;
  if (req.genus) {
    const std::int64_t num = 8 * (static_cast<std::int64_t>(*req.genus) - 1);
    if (*req.genus < 2 || num % (n - 4) != 0) {
      throw HypothesisError("genus " + std::to_string(*req.genus) + " gives no integral face count");
    }
    const auto from_genus = static_cast<std::uint32_t>(num / (n - 4));
    if (f && *f != from_genus) throw InvalidArgument("faces and genus disagree");
    f = from_genus;
  }
  if (!f) throw InvalidArgument("bourdon_surface needs faces or genus");
  if (*f == 0 || *f % 8 != 0) throw HypothesisError("F = " + std::to_string(*f) + " is not a positive multiple of 8");
  return *f;
}

}  // namespace detail

namespace {

void require_case(const FieldCtx& field, bool want_q1) {
  const bool q1 = ai_case_for(field) == AiCase::q1mod4;
  if (q1 && !want_q1) {
    throw HypothesisError("q = " + std::to_string(field.q()) + " is 1 mod 4; no chamber-transitive A_i exists");
  }
  if (!q1 && want_q1) throw HypothesisError("q = " + std::to_string(field.q()) + " is not 1 mod 4");
}

void require_km(const GCM& a) {
  const auto km = km_condition(a);
  if (!km.holds) {
    const auto [i, j] = km.violations.front();
    throw HypothesisError("KM condition fails at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
}

// Nerve must be the n-cycle 0 - 1 - ... - (n-1) - 0.
void require_cycle_nerve(const CoxeterMatrix& m, int n) {
  if (n < 5) throw HypothesisError("W_n needs n >= 5 generators, got " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent != (m(i, j) == 2)) {
        throw HypothesisError("nerve is not the " + std::to_string(n) + "-cycle at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
      }
    }
  }
}

}  // namespace

Stats check_hypotheses(const ConstructionRequest& req) {
  const GCM a = GCM::validate(req.cartan);
  const auto m = CoxeterMatrix::from_gcm(a);
  const int n = a.rank();
  const FieldCtx field = FieldCtx::make(req.p, req.h);
  Stats st;
  st.emplace_back("hypothesis.rank", std::to_string(n));
  st.emplace_back("hypothesis.q", std::to_string(field.q()));
  switch (req.which) {
    case ConstructionKind::ra_chamber_transitive:
      check_right_angled(a, m);
      require_case(field, false);
      st.emplace_back("hypothesis.right_angled", "yes");
      st.emplace_back("hypothesis.weyl_group", "infinite");
      break;
    case ConstructionKind::ra_two_orbit:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j && m(i, j) != CoxeterMatrix::kInfinity) {
            throw HypothesisError("m_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                  " is finite; all must be infinite");
          }
        }
      }
      require_km(a);
      if (n < 2) throw HypothesisError("Weyl group is finite");
      require_case(field, true);
      st.emplace_back("hypothesis.nerve", "no edges");
      break;
    case ConstructionKind::bourdon_surface: {
      require_cycle_nerve(m, n);
      check_right_angled(a, m);
      require_case(field, true);
      const auto faces = detail::surface_face_count(req, n);
      st.emplace_back("hypothesis.nerve", std::to_string(n) + "-cycle");
      st.emplace_back("hypothesis.faces", std::to_string(faces));
      st.emplace_back("hypothesis.genus", std::to_string(1 + faces * static_cast<std::uint32_t>(n - 4) / 8));
      break;
    }
    case ConstructionKind::fp_free: {
      require_km(a);
      std::string comps;
      for (TypeMask j : detail::fp_factors(req, m)) {
        comps += (comps.empty() ? "" : " ") + mask_label(j) + ":" + spherical_type(m, j);
      }
      st.emplace_back("hypothesis.components", comps);
      break;
    }
  }
  if (req.which != ConstructionKind::fp_free) st.emplace_back("hypothesis.ai_case", to_string(ai_case_for(field)));
  st.emplace_back("hypothesis.km_condition", "holds");
  return st;
}

}  // namespace kml
