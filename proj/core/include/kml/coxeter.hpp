#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kml {

/// Subsets of the generating set I = {0, ..., n-1} as bitmasks.
using TypeMask = std::uint32_t;

constexpr int kMaxRank = 24;

inline int mask_size(TypeMask m) { return __builtin_popcount(m); }
std::vector<int> mask_members(TypeMask m);
TypeMask mask_of(const std::vector<int>& members);
/// "{1,2}" with 1-based generator labels, "{}" for the empty set.
std::string mask_label(TypeMask m);

/// Generalised Cartan matrix.
class GCM {
 public:
  /// Validates the three GCM axioms; throws InvalidArgument naming the first
  /// violated one.
  static GCM validate(const std::vector<std::vector<int>>& rows);

  int rank() const { return static_cast<int>(a_.size()); }
  int operator()(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<int>>& rows() const { return a_; }

 private:
  std::vector<std::vector<int>> a_;
};

/// Coxeter matrix with entries in {1,2,3,4,6,inf}; infinity is stored as 0.
class CoxeterMatrix {
 public:
  static constexpr int kInfinity = 0;

  static CoxeterMatrix from_gcm(const GCM& a);
  /// Entries must be symmetric with m_ii = 1 and m_ij in {2,3,4,6,0}.
  static CoxeterMatrix from_entries(const std::vector<std::vector<int>>& m);

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[i][j]; }
  bool finite_edge(int i, int j) const { return m_[i][j] != kInfinity; }

 private:
  std::vector<std::vector<int>> m_;
};

/// Witness pairs (i,j), 0-based, where a_ij a_ji >= 4 but |a_ij| or |a_ji| < 2.
struct KmCondition {
  bool holds = true;
  std::vector<std::pair<int, int>> violations;
};
KmCondition km_condition(const GCM& a);

/// Finite Coxeter type of a connected diagram, e.g. "A2", "B3", "G2".
std::optional<std::string> finite_type_name(const CoxeterMatrix& m, TypeMask component);

/// Connected components of the Coxeter diagram restricted to J
/// (edges where m_ij >= 3).
std::vector<TypeMask> diagram_components(const CoxeterMatrix& m, TypeMask j);

bool is_spherical(const CoxeterMatrix& m, TypeMask j);
/// Cartan-type label of a spherical J, components joined by 'x' ("A1xA1").
std::string spherical_type(const CoxeterMatrix& m, TypeMask j);

struct SphericalLattice {
  /// Ordered by size, then by mask value. Always starts with the empty set.
  std::vector<TypeMask> subsets;
  /// (J', J) with J' strictly contained in J, indices into subsets.
  std::vector<std::pair<std::size_t, std::size_t>> containments;

  std::optional<std::size_t> index_of(TypeMask j) const;
};
SphericalLattice spherical_subsets(const CoxeterMatrix& m);

/// Nerve 1-skeleton: edge {i,j} iff m_ij is finite.
struct NerveGraph {
  int n = 0;
  std::vector<std::vector<bool>> adjacent;
};
NerveGraph nerve_graph(const CoxeterMatrix& m);

struct FreeProductDecomposition {
  bool ok = false;
  std::vector<TypeMask> factors;  ///< components of the nerve graph
  std::optional<TypeMask> non_spherical;
  std::string diagnostic;
};
FreeProductDecomposition free_product_decomposition(const CoxeterMatrix& m);

/// Integer polynomial, coefficient k = multiplicity of length k.
struct Polynomial {
  std::vector<std::int64_t> coeffs;
  std::int64_t eval(std::int64_t q) const;
  std::string to_string() const;
  bool operator==(const Polynomial&) const = default;
};

/// W_J(q) by breadth-first enumeration of W_J acting on its root system.
Polynomial poincare_polynomial(const CoxeterMatrix& m, TypeMask j);

/// |P_J : P_J'| = W_J(q) / W_J'(q); throws if not an exact integer.
std::int64_t parabolic_index(const CoxeterMatrix& m, TypeMask j, TypeMask j_sub, std::int64_t q);

bool right_angled_check(const CoxeterMatrix& m);
bool weyl_infinite_check(const CoxeterMatrix& m);

}  // namespace kml
