#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kml/coxeter.hpp"
#include "kml/group.hpp"
#include "kml/levi.hpp"

namespace kml {

enum class ResidueKind { product_of_lines, a2_plane, b2_quadrangle, counting_only };

std::string to_string(ResidueKind k);

/// Finite model of the spherical residue of type J through the base chamber.
///
/// For every T within J the chambers are partitioned into T-residues
/// ("blocks"); a block of type T stands for a coset h P_T in P_J / P_T.
/// Chamber 0 is the base chamber, and block 0 of every type contains it.
class ResidueModel {
 public:
  /// prod_{j in J} P^1(F_q) with L_J acting (J a commuting clique).
  static ResidueModel product_of_lines(std::shared_ptr<const LeviModel> levi);
  /// Flags of PG(2, q); J = {j1 < j2}: a j1-panel fixes the line, a j2-panel fixes the point.
  static ResidueModel a2_plane(const FieldCtx& F, TypeMask j);
  /// Flags of the symplectic quadrangle W(3, q) for the form
  /// x1 y2 - x2 y1 + x3 y4 - x4 y3; panel types as for a2_plane.
  static ResidueModel b2_quadrangle(const FieldCtx& F, TypeMask j);
  /// Chamber count only (W_J(q)); geometric queries throw.
  static ResidueModel counting_only(const CoxeterMatrix& m, TypeMask j, std::int64_t q);

  ResidueKind kind() const { return kind_; }
  TypeMask type() const { return type_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t chamber_count() const { return chamber_count_; }
  std::uint32_t base_chamber() const { return 0; }
  bool geometric() const { return kind_ != ResidueKind::counting_only; }
  const std::shared_ptr<const LeviModel>& levi() const { return levi_; }

  /// Block id of every chamber for residues of type t (t within J).
  const std::vector<std::uint32_t>& blocks(TypeMask t) const;
  std::uint32_t block_count(TypeMask t) const;
  /// First chamber (in chamber order) of a block.
  std::uint32_t block_representative(TypeMask t, std::uint32_t block) const;
  /// Whether block (small, b_small) lies inside block (big, b_big); small within big.
  bool block_contains(TypeMask big, std::uint32_t b_big, TypeMask small, std::uint32_t b_small) const;

  const std::string& chamber_label(std::uint32_t c) const { return labels_.at(c); }

 private:
  ResidueModel() = default;
  void finish(const std::vector<std::vector<std::uint32_t>>& panels_by_slot);

  ResidueKind kind_ = ResidueKind::counting_only;
  TypeMask type_ = 0;
  std::uint32_t q_ = 0;
  std::uint64_t chamber_count_ = 0;
  std::shared_ptr<const LeviModel> levi_;
  std::vector<std::string> labels_;
  std::map<TypeMask, std::vector<std::uint32_t>> blocks_;
  std::map<TypeMask, std::vector<std::uint32_t>> block_reps_;
};

/// Typed poset of the building star of sigma_J: one node per block of every
/// type T within J (the T-vertices h sigma_T), ordered by block containment.
struct StarPoset {
  struct Node {
    TypeMask type = 0;
    std::uint32_t block = 0;
  };
  TypeMask type = 0;
  std::vector<Node> nodes;
  /// Strictly comparable pairs (lower, upper), lower.type strictly inside upper.type.
  std::vector<std::pair<std::size_t, std::size_t>> relations;
  std::map<TypeMask, std::size_t> count_by_type;

  std::optional<std::size_t> node_index(TypeMask t, std::uint32_t block) const;
};

StarPoset star_poset(const ResidueModel& r);

/// For U <= V <= H and transversals of H/U and H/V, the sets
/// B_j = { a_j^-1 c_i : c_i U within a_j V }, each a transversal of V/U.
/// Inputs and outputs are element indices of H.
std::vector<std::vector<std::size_t>> transversal_from_cosets(const FiniteActionGroup& h, const FiniteActionGroup& v,
                                                              const FiniteActionGroup& u,
                                                              const std::vector<std::size_t>& t_hu,
                                                              const std::vector<std::size_t>& t_hv);

/// Whether reps (indices of H) form a left transversal of V/U (V, U given
/// as subgroups of H).
bool is_left_transversal(const FiniteActionGroup& h, const FiniteActionGroup& v, const FiniteActionGroup& u,
                         const std::vector<std::size_t>& reps);

}  // namespace kml
