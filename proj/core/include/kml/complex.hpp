#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "kml/group.hpp"
#include "kml/residue.hpp"
#include "kml/scwol.hpp"

namespace kml {

using GroupPtr = std::shared_ptr<const FiniteActionGroup>;

/// Complex of finite groups over a scwol. A null local group is the trivial
/// group. psi[a] lists, for every element of G_{i(a)}, its image in G_{t(a)}.
/// Twists default to the identity (element 0) for pairs not listed.
struct ComplexOfGroups {
  Scwol base;
  std::vector<GroupPtr> local;
  std::vector<std::vector<std::size_t>> psi;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> twist;

  std::size_t order(std::uint32_t v) const { return local.at(v) ? local[v]->order() : 1; }
  std::size_t twist_of(std::uint32_t a, std::uint32_t b) const;
  bool trivial() const;

  /// Trivial complex of groups over s.
  static ComplexOfGroups trivial_over(Scwol s);
  /// Sets local groups and fills every psi by inclusion of elements (throws
  /// if some G_{i(a)} is not a subgroup of G_{t(a)}).
  static ComplexOfGroups by_inclusion(Scwol s, std::vector<GroupPtr> local);
};

/// Checks psi homomorphic and injective, the twisted composition law on
/// composable pairs and the cocycle condition on composable triples.
Diagnostics validate(const ComplexOfGroups& c);

/// Exact non-negative rational.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool operator==(const Rational&) const = default;
  std::string to_string() const;
};
Rational add(Rational a, Rational b);

/// Sum over type-empty vertices of 1 / |G_sigma| (each chamber stabiliser weighs 1).
Rational covolume(const ComplexOfGroups& c);

/// Rank of the free fundamental group of a connected trivial complex:
/// 1 - chi of the realisation.
std::int64_t free_rank_trivial(const ComplexOfGroups& c);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  std::string to_string() const;
};

/// Graph product presentation of a complex over the chamber scwol with
/// trivial chamber group and cyclic mirror groups: one generator per
/// nontrivial rank-one vertex group, its order as a relator, and a
/// commutator for every rank-two vertex.
Presentation presentation_over_cone(const ComplexOfGroups& c);

/// The target: the chamber scwol with a finite residue model per slot
/// standing in for the parabolic subgroups.
struct TargetResidueFamily {
  SphericalLattice lattice;
  Scwol scwol;  ///< build_chamber_scwol(lattice)
  std::vector<std::shared_ptr<const ResidueModel>> slots;
  std::map<TypeMask, std::uint32_t> slot_for_type;

  TypeMask vertex_type(std::uint32_t v) const { return lattice.subsets.at(v); }
  std::uint32_t vertex_of(TypeMask t) const;
};

/// Coset of a parabolic recorded by its block in a residue (used when all
/// local groups are trivial and elements are replaced by flags).
struct FlagCoset {
  std::uint32_t block = 0;
  bool operator==(const FlagCoset&) const = default;
};
using EdgeValue = std::variant<LeviElement, FlagCoset>;

/// Where a source vertex sits: a block of type f(sigma) in a residue slot.
/// Its chambers stand for the cosets of the Borel inside P_{f(sigma)}.
struct Frame {
  std::uint32_t slot = 0;
  std::uint32_t block = 0;
};

struct CogMorphism {
  std::shared_ptr<const ComplexOfGroups> source;
  std::shared_ptr<const TargetResidueFamily> target;
  std::vector<std::uint32_t> vertex_map;
  std::vector<std::uint32_t> edge_map;
  std::vector<Frame> frame;
  /// Per source vertex, the image of every element (in the frame slot's Levi
  /// model); empty for trivial local groups.
  std::vector<std::vector<LeviElement>> local;
  std::vector<EdgeValue> edge_value;

  /// Local maps by inclusion of Levi witnesses into each frame slot's model.
  void set_inclusion_local_maps();
};

struct CosetCheck {
  std::uint32_t vertex = 0;       ///< source vertex sigma
  std::uint32_t target_edge = 0;  ///< target edge b with t(b) = f(sigma)
  std::size_t fibre = 0;          ///< number of edges a over b ending at sigma
  std::size_t domain = 0;
  std::size_t image = 0;
  std::size_t index = 0;
  bool ok = false;
  std::string witness;
};

struct CoveringCertificate {
  bool pass = false;
  std::vector<std::string> morphism_violations;
  std::vector<CosetCheck> checks;
  std::size_t failed_checks = 0;

  std::vector<std::string> witnesses() const;
};

/// Checks the morphism axioms, injectivity of the local maps and that every
/// coset map is a bijection. Violations are recorded, not thrown.
CoveringCertificate verify_covering(const CogMorphism& phi);

/// The same morphism with source edge a removed (a mutation for tests).
CogMorphism without_source_edge(const CogMorphism& phi, std::uint32_t a);

/// The same morphism with G_v replaced by the subgroup on the listed
/// elements (a mutation for tests); incoming edge images must be kept.
CogMorphism with_shrunken_group(const CogMorphism& phi, std::uint32_t v, std::vector<std::size_t> keep);

/// Chamber-scwol target over the spherical subsets of m, one slot per subset.
std::shared_ptr<TargetResidueFamily> make_target(const CoxeterMatrix& m,
                                                 const std::map<TypeMask, std::shared_ptr<const ResidueModel>>& slots);

}  // namespace kml
