#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kml/homology.hpp"
#include "kml/scwol.hpp"

namespace kml {

/// Closed surface tiled by n-gons with sides typed 0..n-1 in cyclic order,
/// two-coloured: faces 0..m-1 are black, m..2m-1 white (m = F/2). Black b
/// is glued along side k to white pairing[k][b]. Corner c of a face sits
/// between sides c-1 and c; side k runs from corner k to corner k+1.
///
/// Orientation: black faces are positively oriented, white negatively, so
/// the edge (b, k) (id b*n + k) is oriented from corner k to corner k+1 of
/// black b and the black face lies on its left.
struct SurfaceComplex {
  struct Traversal {
    std::uint32_t edge = 0;
    int dir = 1;  ///< +1 along the edge orientation, -1 against it
  };
  /// Closed curve through opposite sides of constant type.
  struct Geodesic {
    int type = 0;
    std::vector<Traversal> edges;
    int sign = 1;  ///< chosen orientation relative to the traversal order
  };

  int n = 0;
  std::uint32_t m = 0;                              ///< black faces
  std::vector<std::vector<std::uint32_t>> pairing;  ///< pairing[k][b]
  std::vector<std::uint32_t> corner_vertex;         ///< (face*n + c) -> vertex
  std::uint32_t vertex_count = 0;
  std::vector<Geodesic> geodesics;
  std::vector<std::pair<std::uint32_t, int>> edge_geodesic;  ///< edge -> (geodesic, dir)

  std::uint32_t face_count() const { return 2 * m; }
  std::uint32_t edge_count() const { return m * static_cast<std::uint32_t>(n); }
  std::int64_t euler_characteristic() const;
  std::uint32_t white_of(std::uint32_t black, int side) const;
  std::uint32_t black_of(std::uint32_t white_face, int side) const;  ///< white_face in [m, 2m)
  std::uint32_t edge_of(std::uint32_t face, int side) const;
  std::uint32_t vertex_at(std::uint32_t face, int corner) const { return corner_vertex[face * n + corner]; }
  /// Whether the face lies to the left of the oriented geodesic through the
  /// edge; the face must contain the edge.
  bool left_of(std::uint32_t edge, std::uint32_t face) const;
  /// The cyclic sequence of faces around each vertex (orientability witness).
  std::vector<std::vector<std::uint32_t>> rotation_system() const;

  IntMatrix boundary2() const;  ///< edges x faces
  IntMatrix boundary1() const;  ///< vertices x edges
  std::vector<std::int64_t> chain(const Geodesic& h) const;

  /// Builds incidences and geodesics from black-white side pairings.
  static SurfaceComplex from_pairings(int n, std::vector<std::vector<std::uint32_t>> pairing);
};

Diagnostics validate(const SurfaceComplex& s);

/// Whether the sum of the 1-chains bounds; throws InvalidArgument if one of
/// them is not a cycle.
bool is_nullhomologous(const SurfaceComplex& s, const std::vector<std::vector<std::int64_t>>& cycles);

/// Signs on the geodesics making the sum of their classes vanish (first one
/// fixed to +1), if any; BudgetExceeded when there are too many geodesics.
std::optional<std::vector<int>> orient_geodesics(const SurfaceComplex& s);

struct TessellationSearch {
  std::optional<SurfaceComplex> surface;  ///< with geodesics oriented
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;         ///< connected pairings reached
  std::uint64_t homology_rejected = 0;  ///< candidates without a good orientation
};

/// Deterministic backtracking over consecutive side-pairing differences
/// (fixed-point-free involutions, lexicographic). Throws BudgetExceeded after
/// `budget` nodes without success.
TessellationSearch find_tessellation(int n, std::uint32_t faces, std::uint64_t budget);

std::string to_dot(const SurfaceComplex& s, const std::string& name);

}  // namespace kml
