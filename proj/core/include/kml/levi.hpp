#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kml/coxeter.hpp"
#include "kml/field.hpp"
#include "kml/mat2.hpp"

namespace kml {

/// A point of the split torus T = (F_q^*)^n, coordinates in the coroot basis.
struct TorusElement {
  std::vector<Elem> t;

  bool operator==(const TorusElement&) const = default;
};

TorusElement torus_identity(int n);
TorusElement torus_multiply(const FieldCtx& F, const TorusElement& x, const TorusElement& y);

/// Simple root character alpha_j(t) = prod_i t_i^{a_ij}.
Elem torus_character(const FieldCtx& F, const GCM& a, int j, const TorusElement& t);

/// Element of a finite Levi factor L_J = (prod_{j in J} SL_2(q)) . T of
/// simply connected type, J a clique of commuting generators (a_jk = 0).
/// In canonical form the torus coordinates t_j, j in J, are 1: the coroot
/// torus alpha_j^v(s) is stored as diag(s, s^-1) in factor j instead.
struct LeviElement {
  std::vector<Mat2> factors;  ///< one per member of J, in increasing order
  TorusElement torus;

  bool operator==(const LeviElement&) const = default;
};

/// Finite model of L_J together with its action on the residue
/// prod_{j in J} P^1(F_q): factor j acts on coordinate j, and t acts on
/// coordinate j through diag(alpha_j(t), 1).
class LeviModel {
 public:
  LeviModel(std::shared_ptr<const FieldCtx> field, GCM gcm, TypeMask type);

  /// Rank-one model over the 1x1 Cartan matrix [2].
  static std::shared_ptr<const LeviModel> rank_one(std::shared_ptr<const FieldCtx> field);

  const FieldCtx& field() const { return *field_; }
  const std::shared_ptr<const FieldCtx>& field_ptr() const { return field_; }
  const GCM& gcm() const { return gcm_; }
  int rank() const { return gcm_.rank(); }
  TypeMask type() const { return type_; }
  const std::vector<int>& members() const { return members_; }
  /// Position of generator j among the factors, or -1.
  int slot(int j) const;

  LeviElement identity() const;
  LeviElement canonical(std::vector<Mat2> factors, TorusElement torus) const;
  LeviElement from_factor(int j, const Mat2& m) const;
  LeviElement from_torus(const TorusElement& t) const;
  LeviElement multiply(const LeviElement& x, const LeviElement& y) const;
  LeviElement inverse(const LeviElement& x) const;
  /// Re-expresses an element of a sub-Levi (from.type() within type()).
  LeviElement embed(const LeviModel& from, const LeviElement& x) const;
  /// Inverse of embed for a model containing this one: defined when every
  /// factor outside this type is diagonal (a coroot torus element).
  std::optional<LeviElement> restrict_from(const LeviModel& from, const LeviElement& x) const;

  std::uint32_t chamber_count() const { return chamber_count_; }
  std::vector<std::uint32_t> chamber_coords(std::uint32_t chamber) const;
  std::uint32_t chamber_index(const std::vector<std::uint32_t>& coords) const;
  std::uint32_t act(const LeviElement& x, std::uint32_t chamber) const;
  std::vector<std::uint32_t> permutation(const LeviElement& x) const;

  /// Flat encoding used for hashing and equality of canonical elements.
  std::vector<std::uint32_t> key(const LeviElement& x) const;
  std::string to_string(const LeviElement& x) const;

 private:
  std::shared_ptr<const FieldCtx> field_;
  GCM gcm_;
  TypeMask type_;
  std::vector<int> members_;
  std::vector<int> slot_;
  std::uint32_t chamber_count_ = 1;
};

}  // namespace kml
