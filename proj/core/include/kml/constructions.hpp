#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kml/complex.hpp"
#include "kml/rank_one.hpp"
#include "kml/surface.hpp"

namespace kml {

enum class ConstructionKind { ra_chamber_transitive, ra_two_orbit, bourdon_surface, fp_free };

std::string to_string(ConstructionKind k);
std::optional<ConstructionKind> construction_from_string(const std::string& name);

struct ConstructionRequest {
  ConstructionKind which = ConstructionKind::ra_chamber_transitive;
  std::vector<std::vector<int>> cartan;
  std::uint32_t p = 2;
  std::uint32_t h = 1;
  std::optional<std::uint32_t> faces;  ///< bourdon_surface: number of polygons
  std::optional<std::uint32_t> genus;  ///< bourdon_surface: alternative to faces
  std::vector<TypeMask> partition;     ///< fp_free: override of the nerve components
  std::uint64_t budget = 1'000'000;    ///< search nodes (tessellation)
  std::size_t cap = FiniteActionGroup::kDefaultCap;

  bool operator==(const ConstructionRequest&) const = default;
};

/// Ordered key/value statistics; order is part of the report format.
using Stats = std::vector<std::pair<std::string, std::string>>;

struct ConstructionResult {
  Stats stats;
  std::shared_ptr<const ComplexOfGroups> complex;
  std::optional<CogMorphism> morphism;
  std::optional<CoveringCertificate> certificate;
  /// Failures of the construction's own condition checks (independent of the
  /// generic covering verifier).
  std::vector<std::string> direct_failures;
  std::optional<Presentation> presentation;
  std::optional<SurfaceComplex> surface;  ///< bourdon_surface only
  std::optional<std::int64_t> free_rank;  ///< fp_free only
  /// DOT renderings of the scwols/surfaces built, by name.
  std::vector<std::pair<std::string, std::string>> dot;

  bool verified() const { return certificate && certificate->pass && direct_failures.empty(); }
};

/// Deliberate defects used to check that certificates are not vacuous.
struct MutationOptions {
  bool gi_inside_orbit = false;  ///< choose g_i keeping the base point in the A_i-orbit
  bool ignore_sides = false;     ///< surface: value 1 on both sides of every geodesic
};

/// Chamber-transitive lattice over the chamber scwol: A_J = <A_j : j in J>
/// inside the simply connected Levi factor, A_empty the common Borel part.
/// Requires right-angled A, the KM condition, infinite W and p = 2 or q = 3 mod 4.
ConstructionResult build_ra_chamber_transitive(const ConstructionRequest& req, bool verify = true);

/// Two chambers glued along all mirrors, mirror groups of order (q+1)/2 and
/// edge values 1 and g_i. Requires q = 1 mod 4 and all m_ij infinite.
ConstructionResult build_ra_two_orbit(const ConstructionRequest& req, bool verify = true,
                                      const MutationOptions& options = {});

/// Surface of genus 1 + F(n-4)/8 tiled by F right-angled n-gons; edge groups
/// A_i, vertex groups A_i x A_j, edge values 1 or g_i by the side of the
/// geodesic. Requires W = W_n with n >= 5, q = 1 mod 4 and 8 | F.
ConstructionResult build_bourdon_surface(const ConstructionRequest& req, bool verify = true,
                                         const MutationOptions& options = {});

/// Trivial complex over copies of the stars of the vertices sigma_{J_k},
/// glued along chambers so that every chamber lies in one copy per factor.
/// Falls back to counting mode (no certificate) when a factor has no
/// implemented residue geometry.
ConstructionResult build_fp(const ConstructionRequest& req, bool verify = true);

/// Hypotheses of the requested construction, without building it; throws
/// HypothesisError with a diagnostic, otherwise returns what was checked.
Stats check_hypotheses(const ConstructionRequest& req);

/// Dispatch on req.which.
ConstructionResult build(const ConstructionRequest& req, bool verify = true);

struct SurfaceSubgroupReport {
  bool right_angled = false;
  bool exhaustive = true;                  ///< false when the search hit its budget
  std::vector<int> cycle;                  ///< induced cycle of length >= 5, empty if none
  std::optional<Presentation> presentation;  ///< graph product over the cycle
  std::string interpretation;
};

/// Looks for an induced cycle of length >= 5 in the nerve 1-skeleton (shortest
/// first, then lexicographic). With mirror_order, each generator a_i also gets
/// the relator a_i^order.
SurfaceSubgroupReport surface_subgroup_hypothesis(const GCM& a, std::optional<std::uint64_t> mirror_order = {},
                                                  std::uint64_t budget = 10'000'000);

/// Shared hypothesis checks; throws HypothesisError with a diagnostic.
void check_right_angled(const GCM& a, const CoxeterMatrix& m);

}  // namespace kml
